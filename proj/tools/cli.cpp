#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "k3fib/catalog.hpp"
#include "k3fib/parse.hpp"
#include "k3fib/report.hpp"

namespace k3fib {

namespace {

struct Options {
    std::string fibration = "all";
    std::string format = "text";
    std::string out_path;
    std::string curve;
    std::string base_field;
    std::string check = "func";
    std::string twist_d;
    bool fix_typos = false;
};

// Writes to --out when given, otherwise to out.
bool emit(const Options& o, const std::string& text, std::ostream& out, std::ostream& err) {
    if (o.out_path.empty()) {
        out << text;
        return true;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f || !(f << text)) {
        err << "k3fib: cannot write " << o.out_path << "\n";
        return false;
    }
    return true;
}

int run_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const Catalog& cat = builtin_catalog();
    std::vector<int> ids;
    if (o.fibration != "all") {
        int id = 0;
        try {
            std::size_t pos = 0;
            id = std::stoi(o.fibration, &pos);
            if (pos != o.fibration.size()) id = 0;
        } catch (const std::exception&) {
        }
        bool known = std::any_of(cat.records.begin(), cat.records.end(), [&](const auto& r) { return r.id == id; });
        if (!known) {
            err << "k3fib verify: --fibration must be 1..6 or all, got '" << o.fibration << "'\n"
                << "usage: k3fib verify [--fibration <1..6|all>] [--format <text|json>] [--out <path>]\n";
            return kExitUsage;
        }
        ids.push_back(id);
    }
    Report rep = verify_catalog(cat, ids);
    std::string text = o.format == "json" ? report_to_json(rep) : report_to_text(rep);
    if (!emit(o, text, out, err)) return kExitFail;
    return rep.pass ? kExitPass : kExitFail;
}

int run_tate(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.curve.empty()) {
        err << "k3fib tate: --curve \"a1;a2;a3;a4;a6\" is required\n";
        return kExitUsage;
    }
    if (!o.base_field.empty()) {
        try {
            NumberField::create(parse_qpoly(o.base_field, "a"), "a");
        } catch (const std::exception& e) {
            err << "k3fib tate: bad --base-field: " << e.what() << "\n";
            return kExitUsage;
        }
    }
    WeierstrassCurve e;
    try {
        e = parse_curve(o.curve);
    } catch (const std::exception& ex) {
        err << "k3fib tate: cannot parse curve: " << ex.what() << "\n";
        return kExitUsage;
    }
    std::vector<FiberData> config;
    try {
        config = fiber_configuration(e);
    } catch (const DegenerateCurve& ex) {
        err << "k3fib tate: degenerate curve: " << ex.what() << "\n";
        return kExitFail;
    }
    int sum = euler_sum(config);
    bool finite_bad = std::any_of(config.begin(), config.end(), [](const auto& f) { return !f.place.is_infinity(); });
    std::vector<std::string> notes;
    if (!o.base_field.empty())
        notes.push_back("constants extended by " + o.base_field +
                        ": fiber types are geometric, places are listed over Q");
    if (!finite_bad) notes.push_back("no bad fibers over finite places");
    if (config.empty() || !config.back().place.is_infinity()) notes.push_back("inf: I0 (good reduction)");
    if (sum != 24) notes.push_back("warning: euler sum " + std::to_string(sum) + " != 24, not a K3 fibration");

    std::ostringstream s;
    if (o.format == "json") {
        s << "{\n  \"curve\": \"" << e.str() << "\",\n  \"fibers\": [";
        for (std::size_t i = 0; i < config.size(); ++i) {
            const auto& f = config[i];
            s << (i ? "," : "") << "\n    {\"place\": \"" << f.place.str() << "\", \"degree\": " << f.place.degree()
              << ", \"type\": \"" << f.type.str() << "\", \"ord_disc\": " << f.ord_disc
              << ", \"euler\": " << f.type.euler() << "}";
        }
        s << (config.empty() ? "" : "\n  ") << "],\n  \"summary\": \"" << configuration_summary(config)
          << "\",\n  \"euler_sum\": " << sum << ",\n  \"notes\": [";
        for (std::size_t i = 0; i < notes.size(); ++i) s << (i ? ", " : "") << std::quoted(notes[i]);
        s << "]\n}\n";
    } else {
        s << "curve  " << e.str() << "\n";
        s << std::left << std::setw(16) << "place" << std::setw(6) << "deg" << std::setw(8) << "type"
          << std::setw(10) << "ord(D)" << "euler\n";
        for (const auto& f : config)
            s << std::setw(16) << f.place.str() << std::setw(6) << f.place.degree() << std::setw(8) << f.type.str()
              << std::setw(10) << f.ord_disc << f.type.euler() << "\n";
        s << "summary  " << configuration_summary(config) << "\n";
        s << "euler    " << sum << "\n";
        for (const auto& n : notes) s << "note: " << n << "\n";
    }
    return emit(o, s.str(), out, err) ? kExitPass : kExitFail;
}

int run_divisor(const Options& o, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> groups{"func", "div1", "div3", "div4"};
    if (std::find(groups.begin(), groups.end(), o.check) == groups.end()) {
        err << "k3fib divisor: --check must be func, div1, div3 or div4\n";
        return kExitUsage;
    }
    auto rep = divisor_checks(builtin_catalog(), o.fix_typos, o.check);
    std::ostringstream s;
    if (o.format == "json") {
        s << "{\n  \"check\": \"" << o.check << "\",\n  \"trivial\": {";
        for (std::size_t i = 0; i < rep.trivial.size(); ++i)
            s << (i ? ", " : "") << std::quoted(rep.trivial[i].name) << ": " << (rep.trivial[i].ok ? "true" : "false");
        s << "},\n  \"fibers\": {";
        for (std::size_t i = 0; i < rep.fibers.size(); ++i)
            s << (i ? ", " : "") << std::quoted(rep.fibers[i].name) << ": " << (rep.fibers[i].ok ? "true" : "false");
        s << "},\n  \"recognized\": {";
        for (std::size_t i = 0; i < rep.recognized.size(); ++i)
            s << (i ? ", " : "") << std::quoted(rep.recognized[i].first) << ": " << std::quoted(rep.recognized[i].second);
        s << "},\n  \"corrections\": [";
        for (std::size_t i = 0; i < rep.corrections.size(); ++i) s << (i ? ", " : "") << std::quoted(rep.corrections[i]);
        s << "],\n  \"pass\": " << (rep.ok() ? "true" : "false") << "\n}\n";
    } else {
        for (const auto& [name, type] : rep.recognized) s << "fiber    " << name << ": " << type << "\n";
        for (const auto& c : rep.corrections) s << "fix      " << c << "\n";
        for (const auto& c : rep.trivial) s << (c.ok ? "ok       " : "FAILED   ") << "numerically trivial " << c.name << "\n";
        for (const auto& c : rep.fibers) s << (c.ok ? "ok       " : "FAILED   ") << c.name << "\n";
        s << (rep.ok() ? "PASS" : "FAIL") << "\n";
    }
    if (!emit(o, s.str(), out, err)) return kExitFail;
    return rep.ok() ? kExitPass : kExitFail;
}

int run_twist(const Options& o, std::ostream& out, std::ostream& err) {
    std::ostringstream s;
    if (!o.curve.empty()) {
        WeierstrassCurve e;
        QFunc d;
        try {
            e = parse_curve(o.curve);
            d = parse_qfunc(o.twist_d.empty() ? "u" : o.twist_d);
            s << quadratic_twist(e, d).str() << "\n";
        } catch (const std::exception& ex) {
            err << "k3fib twist: " << ex.what() << "\n";
            return kExitUsage;
        }
        return emit(o, s.str(), out, err) ? kExitPass : kExitFail;
    }
    const Catalog& cat = builtin_catalog();
    if (!cat.twist) {
        err << "k3fib twist: the catalog has no twist relation\n";
        return kExitFail;
    }
    bool ok = twist_check(cat);
    s << "Fibration " << cat.twist->target << " = twist of Fibration " << cat.twist->source << " by d = "
      << cat.twist->d.str() << ": " << (ok ? "PASS" : "FAIL") << "\n";
    if (!emit(o, s.str(), out, err)) return kExitFail;
    return ok ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of Jacobian elliptic fibrations on the K3 surface X3", "k3fib"};
    app.require_subcommand(1);
    Options o;
    auto format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        c->add_option("--out", o.out_path, "write the report to a file");
    };

    auto* verify = app.add_subcommand("verify", "verify catalog fibrations");
    verify->add_option("--fibration", o.fibration, "1..6 or all");
    format(verify);

    auto* tate = app.add_subcommand("tate", "singular fibers of a curve over Q(u)");
    tate->add_option("--curve", o.curve, "coefficients \"a1;a2;a3;a4;a6\" in u")->required();
    tate->add_option("--base-field", o.base_field, "monic irreducible polynomial in a");
    format(tate);

    auto* divisor = app.add_subcommand("divisor", "lattice checks of the catalog divisors");
    divisor->add_option("--check", o.check, "func, div1, div3 or div4");
    divisor->add_flag("--fix-typos", o.fix_typos, "search minimal corrections of failing fibers");
    format(divisor);

    auto* twist = app.add_subcommand("twist", "quadratic twist relation");
    twist->add_option("--curve", o.curve, "twist this curve instead of checking the catalog");
    twist->add_option("--d", o.twist_d, "twisting function (default u)");
    format(twist);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "k3fib: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(o, out, err);
        if (*tate) return run_tate(o, out, err);
        if (*divisor) return run_divisor(o, out, err);
        return run_twist(o, out, err);
    } catch (const std::exception& e) {
        err << "k3fib: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace k3fib
