#include "k3fib/report.hpp"

#include <json.hpp>
#include <sstream>

namespace k3fib {

namespace {

using Json = nlohmann::ordered_json;

Json checks_json(const std::vector<CheckResult>& checks) {
    Json out = Json::object();
    for (const auto& c : checks) out[c.name] = c.ok;
    return out;
}

std::vector<CheckResult> checks_from(const Json& j) {
    std::vector<CheckResult> out;
    for (const auto& [k, v] : j.items()) out.push_back({k, v.get<bool>()});
    return out;
}

std::string torsion_str(const std::vector<int>& t) {
    if (t.empty()) return "0";
    std::string s;
    for (int n : t) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(n);
    return s;
}

}  // namespace

std::string report_to_json(const Report& r, int indent) {
    Json doc;
    doc["version"] = r.version;
    doc["fibrations"] = Json::array();
    for (const auto& f : r.fibrations) {
        Json fj;
        fj["id"] = f.id;
        fj["resolved_equation"] = f.resolved_equation;
        fj["equation_variant"] = f.equation_variant;
        fj["parameter"] = f.parameter;
        fj["fibers"] = Json::array();
        for (const auto& e : f.fibers) fj["fibers"].push_back({{"place", e.place}, {"type", e.type}, {"euler", e.euler}});
        fj["summary"] = f.summary;
        fj["mw"] = {{"rank", f.rank}, {"torsion", f.torsion}, {"heights", f.heights}};
        fj["checks"] = checks_json(f.checks);
        fj["notes"] = f.notes;
        fj["pass"] = f.pass();
        doc["fibrations"].push_back(std::move(fj));
    }
    doc["identities"] = checks_json(r.identities);
    doc["notes"] = r.notes;
    doc["pass"] = r.pass;
    return doc.dump(indent) + "\n";
}

Report report_from_json(std::string_view text) {
    try {
        Json doc = Json::parse(text);
        Report r;
        r.version = doc.at("version").get<std::string>();
        for (const auto& fj : doc.at("fibrations")) {
            FibrationReport f;
            f.id = fj.at("id").get<int>();
            f.resolved_equation = fj.at("resolved_equation").get<std::string>();
            f.equation_variant = fj.value("equation_variant", "");
            f.parameter = fj.value("parameter", "");
            for (const auto& e : fj.at("fibers"))
                f.fibers.push_back({e.at("place").get<std::string>(), e.at("type").get<std::string>(), e.at("euler").get<int>()});
            f.summary = fj.value("summary", "");
            const auto& mw = fj.at("mw");
            f.rank = mw.at("rank").get<int>();
            f.torsion = mw.at("torsion").get<std::vector<int>>();
            f.heights = mw.at("heights").get<std::vector<std::string>>();
            f.checks = checks_from(fj.at("checks"));
            f.notes = fj.at("notes").get<std::vector<std::string>>();
            r.fibrations.push_back(std::move(f));
        }
        if (doc.contains("identities")) r.identities = checks_from(doc["identities"]);
        if (doc.contains("notes")) r.notes = doc["notes"].get<std::vector<std::string>>();
        r.pass = doc.at("pass").get<bool>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out << "k3fib " << r.version << "\n";
    for (const auto& f : r.fibrations) {
        out << "\nFibration " << f.id << ": " << (f.pass() ? "PASS" : "FAIL") << "\n";
        if (!f.parameter.empty()) out << "  parameter  u = " << f.parameter << "\n";
        if (!f.resolved_equation.empty())
            out << "  equation   " << f.resolved_equation
                << (f.equation_variant == "printed" ? "" : "  [" + f.equation_variant + "]") << "\n";
        out << "  fibers     " << f.summary << "\n";
        for (const auto& e : f.fibers) out << "    " << e.type << " at " << e.place << " (euler " << e.euler << ")\n";
        out << "  MW         " << torsion_str(f.torsion);
        for (const auto& h : f.heights) out << " + <" << h << ">";
        out << "  (rank " << f.rank << ")\n";
        if (!f.heights.empty()) {
            out << "  heights   ";
            for (const auto& h : f.heights) out << " " << h;
            out << "\n";
        }
        for (const auto& c : f.checks) out << "  " << (c.ok ? "ok    " : "FAILED") << " " << c.name << "\n";
        for (const auto& n : f.notes) out << "  note: " << n << "\n";
    }
    if (!r.identities.empty()) {
        out << "\nIdentities\n";
        for (const auto& c : r.identities) out << "  " << (c.ok ? "ok    " : "FAILED") << " " << c.name << "\n";
    }
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    out << "\n" << (r.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace k3fib
