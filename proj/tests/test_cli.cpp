#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "k3fib/report.hpp"

using namespace k3fib;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("verify all as json") {
    auto r = run({"verify", "--fibration", "all", "--format", "json"});
    CHECK(r.code == kExitPass);
    Report rep = report_from_json(r.out);
    CHECK(rep.pass);
    REQUIRE(rep.fibrations.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(rep.fibrations[i].id == static_cast<int>(i) + 1);
        CHECK(rep.fibrations[i].pass());
    }
    // Byte-identical on repetition.
    CHECK(run({"verify", "--format", "json"}).out == r.out);
}

TEST_CASE("verify one fibration as text") {
    auto r = run({"verify", "--fibration", "3"});
    CHECK(r.code == kExitPass);
    CHECK(has(r.out, "I6* + III* + 3I1"));
    CHECK(has(r.out, "Z/2 + <3/2>"));
    CHECK(has(r.out, "heights    3/2"));
}

TEST_CASE("bad arguments exit 2") {
    for (auto args : std::vector<std::vector<std::string>>{{"verify", "--fibration", "9"},
                                                           {"verify", "--fibration", "3x"},
                                                           {"verify", "--format", "xml"},
                                                           {},
                                                           {"frobnicate"},
                                                           {"tate"},
                                                           {"tate", "--curve", "0;0;0;0;u^"},
                                                           {"tate", "--curve", "0;0;0;1"},
                                                           {"tate", "--curve", "0;0;0;0;u", "--base-field", "a^2-4"},
                                                           {"divisor", "--check", "div7"}}) {
        auto r = run(args);
        std::string label = args.empty() ? "(none)" : args[0];
        CHECK_MESSAGE(r.code == kExitUsage, label);
        CHECK_FALSE(r.err.empty());
    }
    CHECK(has(run({"verify", "--fibration", "9"}).err, "usage"));
}

TEST_CASE("tate") {
    auto f1 = run({"tate", "--curve", "0;0;0;0;u^5*(u-1)^2"});
    CHECK(f1.code == kExitPass);
    CHECK(has(f1.out, "2II* + IV"));
    CHECK(has(f1.out, "euler    24"));
    CHECK_FALSE(has(f1.out, "warning"));

    auto f4 = run({"tate", "--curve", "0;1;0;-2*u^6;u^12", "--format", "json"});
    CHECK(f4.code == kExitPass);
    CHECK(has(f4.out, "\"place\": \"u\", \"degree\": 1, \"type\": \"I18\""));
    CHECK(has(f4.out, "\"place\": \"u^6+4/27\", \"degree\": 6, \"type\": \"I1\""));
    CHECK(has(f4.out, "\"euler_sum\": 24"));

    auto flat = run({"tate", "--curve", "0;0;0;0;1"});
    CHECK(flat.code == kExitPass);
    CHECK(has(flat.out, "no bad fibers over finite places"));
    CHECK(has(flat.out, "inf: I0"));
    CHECK(has(flat.out, "warning: euler sum 0"));

    CHECK(run({"tate", "--curve", "0;0;0;0;0"}).code == kExitFail);
    auto ext = run({"tate", "--curve", "0;0;0;0;u^5*(u-1)^2", "--base-field", "a^3-4"});
    CHECK(ext.code == kExitPass);
    CHECK(has(ext.out, "2II* + IV"));
}

TEST_CASE("divisor and twist commands") {
    auto d3 = run({"divisor", "--check", "div3"});
    CHECK(d3.code == kExitFail);
    CHECK(has(d3.out, "not connected"));
    auto fixed = run({"divisor", "--check", "div3", "--fix-typos"});
    CHECK(fixed.code == kExitPass);
    CHECK(has(fixed.out, "3*E'{1,2} (occurrence 2 of 2) -> 3*E'{1,3}"));
    CHECK(has(fixed.out, "III*"));
    CHECK(run({"divisor", "--check", "func"}).code == kExitPass);
    CHECK(run({"divisor", "--check", "div1", "--format", "json"}).code == kExitPass);
    CHECK(run({"divisor", "--check", "div4"}).code == kExitPass);

    auto tw = run({"twist"});
    CHECK(tw.code == kExitPass);
    CHECK(has(tw.out, "PASS"));
    auto user = run({"twist", "--curve", "0;-2*(u^3-2);0;u^6;0", "--d", "u"});
    CHECK(user.code == kExitPass);
    CHECK(has(user.out, "u^8*X"));
}

TEST_CASE("--out writes the report to a file") {
    std::string path = "test_cli_report.json";
    auto r = run({"verify", "--fibration", "5", "--format", "json", "--out", path});
    CHECK(r.code == kExitPass);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(report_from_json(buf.str()).fibrations.at(0).id == 5);
    std::remove(path.c_str());
}
