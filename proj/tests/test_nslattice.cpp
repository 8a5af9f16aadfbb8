#include <doctest.h>

#include <random>

#include "k3fib/expr.hpp"
#include "k3fib/nslattice.hpp"

using namespace k3fib;

namespace {

DivisorClass D(const char* s) { return parse_divisor(s); }

const char* kFunc[] = {
    "3F2 + 2(E'{2,1}+E'{2,2}+E'{2,3}) + E{2,1}+E{2,2}+E{2,3} - (3F1 + 2(E'{1,1}+E'{1,2}+E'{1,3}) + E{1,1}+E{1,2}+E{1,3})",
    "3F3 + 2(E'{3,1}+E'{3,2}+E'{3,3}) + E{3,1}+E{3,2}+E{3,3} - (3F1 + 2(E'{1,1}+E'{1,2}+E'{1,3}) + E{1,1}+E{1,2}+E{1,3})",
    "3G2 + 2(E{1,2}+E{2,2}+E{3,2}) + E'{1,2}+E'{2,2}+E'{3,2} - (3G1 + 2(E{1,1}+E{2,1}+E{3,1}) + E'{1,1}+E'{2,1}+E'{3,1})",
    "3G3 + 2(E{1,3}+E{2,3}+E{3,3}) + E'{1,3}+E'{2,3}+E'{3,3} - (3G1 + 2(E{1,1}+E{2,1}+E{3,1}) + E'{1,1}+E'{2,1}+E'{3,1})",
    "F2+E'{2,3}+E{2,3}+G3+E{3,3}+E'{3,3}+F3+E'{3,2}+E{3,2}+G2+E{2,2}+E'{2,2} - (E{2,1}+E{3,1} + "
    "2(G1+E{1,1}+E'{1,1}+F1) + E'{1,2}+E'{1,3})",
};

const char* kDiv1Zero = "E'{3,3}+2E{3,3}+3G3+4E{1,3}+5E'{1,3}+6F1+3E'{1,1}+4E'{1,2}+2E{1,2}";
const char* kDiv1Polar = "E'{3,1}+2E{3,1}+3G1+4E{2,1}+5E'{2,1}+6F2+3E'{2,3}+4E'{2,2}+2E{2,2}";
const char* kDiv3ZeroPrinted = "G2+2E{1,2}+3E'{1,2}+4F1+3E'{1,1}+2E{1,3}+G3+3E'{1,2}";
const char* kDiv3Polar = "E'{2,2}+E'{2,3}+2(F2+E'{2,1}+E{2,1}+G1+E{3,1}+E'{3,1}+F3)+E'{3,2}+E'{3,3}";
const char* kDivNo4 = "E{2,2}+G2+E{1,2}+E'{1,2}+F1+E'{1,3}+E{1,3}+G3+E{3,3}+E'{3,3}+F3+E'{3,1}+E{3,1}+G1+E{2,1}+"
                      "E'{2,1}+F2+E'{2,2}";

}  // namespace

TEST_CASE("curve names") {
    CHECK(CurveClass::parse("F1").index() == 0);
    CHECK(CurveClass::parse("E'{1,3}") == CurveClass::Eprime(1, 3));
    CHECK(CurveClass::parse("E_{2,1}") == CurveClass::E(2, 1));
    CHECK(CurveClass::parse("E'_{2,1}") == CurveClass::Eprime(2, 1));
    CHECK(CurveClass::parse("E_{2,1}'") == CurveClass::Eprime(2, 1));
    CHECK(CurveClass::Eprime(3, 2).str() == "E'{3,2}");
    for (const auto& c : CurveClass::all()) CHECK(CurveClass::parse(c.str()) == c);
    CHECK_THROWS_AS(CurveClass::parse("F4"), ParseError);
    CHECK_THROWS_AS(CurveClass::parse("H1"), ParseError);
    CHECK_THROWS_AS(parse_divisor("3*G3 + "), ParseError);
    CHECK(divisor_str(D("3*G3 + 2*E{1,3} - F1")) == "-F1 + 3*G3 + 2*E{1,3}");
}

TEST_CASE("intersection pairing") {
    const auto& g = gram_matrix();
    for (int i = 0; i < kNumCurves; ++i) {
        CHECK(g[i][i] == -2);
        for (int j = 0; j < kNumCurves; ++j) {
            CHECK(g[i][j] == g[j][i]);
            CHECK((g[i][j] == -2 || g[i][j] == 0 || g[i][j] == 1));
        }
    }
    CHECK(intersect(D("F1"), D("E'{1,2}")) == 1);
    CHECK(intersect(D("F1"), D("F1")) == -2);
    CHECK(intersect(D("F1"), D("G2")) == 0);
    CHECK(intersect(D("G2"), D("E{3,2}")) == 1);
    CHECK(intersect(D("G2"), D("E'{3,2}")) == 0);
    CHECK(intersect(D("E{1,2}"), D("E'{1,2}")) == 1);
    CHECK(intersect(D("E{1,2}"), D("E'{2,1}")) == 0);
    // F and G curves meet three others, E and E' curves two.
    for (int i = 0; i < kNumCurves; ++i) CHECK(std::count(g[i].begin(), g[i].end(), 1) == (i < 6 ? 3 : 2));
    int r = gram_rank();
    CHECK(r <= 20);
    CHECK(r >= 16);
}

TEST_CASE("function divisors are numerically trivial") {
    for (const char* s : kFunc) CHECK_MESSAGE(numerically_trivial(D(s)), s);
    CHECK_FALSE(numerically_trivial(D("F1")));
    auto div1 = D(kDiv1Zero);
    auto pol1 = D(kDiv1Polar);
    DivisorClass diff{};
    for (int i = 0; i < kNumCurves; ++i) diff[i] = div1[i] - pol1[i];
    CHECK(numerically_trivial(diff));
}

TEST_CASE("fiber recognition") {
    auto r1 = recognize_fiber(D(kDiv1Zero));
    REQUIRE(r1.ok());
    CHECK(r1.type->str() == "II*");
    CHECK(recognize_fiber(D(kDiv1Polar)).type->str() == "II*");
    CHECK(recognize_fiber(D(kDivNo4)).type->str() == "I18");
    CHECK(recognize_fiber(D(kDiv3Polar)).type->str() == "I6*");

    auto t = D(kFunc[4]);
    CHECK(recognize_fiber(positive_part(t)).type->str() == "I12");
    CHECK(recognize_fiber(negative_part(t)).type->str() == "I3*");

    auto printed = recognize_fiber(D(kDiv3ZeroPrinted));
    CHECK(printed.status == FiberRecognition::Status::NotConnected);
    CHECK_FALSE(printed.offending.empty());

    auto twice = D(kDivNo4);
    for (auto& c : twice) c *= 2;
    CHECK(recognize_fiber(twice).status == FiberRecognition::Status::NotPrimitive);
    CHECK(recognize_fiber(D("F1 + E'{1,1}")).status == FiberRecognition::Status::NotFiber);
    CHECK_THROWS_AS(recognize_fiber(D("F1 - G1")), std::invalid_argument);
}

TEST_CASE("typo search on the printed Fibration 3 divisor") {
    auto terms = parse_divisor_terms(kDiv3ZeroPrinted);
    REQUIRE(terms.size() == 8);
    auto fixes = minimal_corrections(terms, D(kDiv3Polar));
    REQUIRE(fixes.size() == 1);
    const auto& fix = fixes[0];
    CHECK(fix.zero_type.str() == "III*");
    CHECK(fix.polar_type.str() == "I6*");
    CHECK(to_class(fix.terms) == D("G2+2E{1,2}+3E'{1,2}+4F1+2E'{1,1}+2E{1,3}+G3+3E'{1,3}"));
    REQUIRE(fix.edits.size() == 2);
    CHECK(fix.edits[0] == "3*E'{1,1} -> 2*E'{1,1}");
    CHECK(fix.edits[1] == "3*E'{1,2} (occurrence 2 of 2) -> 3*E'{1,3}");

    // A correct divisor needs no edit.
    auto none = minimal_corrections(parse_divisor_terms(kDiv1Zero), D(kDiv1Polar));
    REQUIRE(none.size() == 1);
    CHECK(none[0].edits.empty());
}

TEST_CASE("property: pairing is symmetric and bilinear") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> c(-3, 3);
    auto rnd = [&] {
        DivisorClass d{};
        for (auto& x : d) x = c(rng);
        return d;
    };
    for (int i = 0; i < 120; ++i) {
        auto a = rnd(), b = rnd(), e = rnd();
        DivisorClass s{};
        for (int k = 0; k < kNumCurves; ++k) s[k] = a[k] + b[k];
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(intersect(s, e) == intersect(a, e) + intersect(b, e));
        CHECK(intersect(a, a) % 2 == 0);
        // Adding a function divisor keeps every pairing.
        auto f = D(kFunc[i % 5]);
        DivisorClass af{};
        for (int k = 0; k < kNumCurves; ++k) af[k] = a[k] + f[k];
        CHECK(intersect(af, b) == intersect(a, b));
    }
}
