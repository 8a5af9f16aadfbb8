#include <doctest.h>

#include <random>

#include "k3fib/catalog.hpp"
#include "k3fib/expr.hpp"
#include "k3fib/parse.hpp"
#include "k3fib/report.hpp"

using namespace k3fib;

namespace {

using NF = NumberFieldElement;

// Specialization oracle: y1, y2 rational, t a root of t^3 - (y1^2-1)(y2^2-1)
// in a cubic field, `a` replaced by 1 (callers restore the a^3 = 4 factor).
struct Specialization {
    Rational y1, y2;
    NumberFieldPtr field;
    NF t;

    static std::optional<Specialization> make(Rational y1, Rational y2) {
        Rational r = (y1 * y1 - 1) * (y2 * y2 - 1);
        if (r.is_zero()) return std::nullopt;
        QPoly m = QPoly::monomial(Rational(1), 3) - QPoly(r);
        if (!is_irreducible(m)) return std::nullopt;
        auto k = NumberField::create(m, "t");
        return Specialization{y1, y2, k, NF::generator(k)};
    }

    NF eval(std::string_view text, const std::map<std::string, NF>& env = {}) const {
        auto e = parse_expr(text);
        return evaluate<NF>(*e, [](const Rational& c) { return NF(c); }, [&](const std::string& n) -> NF {
            if (n == "y1") return NF(y1);
            if (n == "y2") return NF(y2);
            if (n == "t") return t;
            if (n == "a") return NF(1);
            auto it = env.find(n);
            if (it == env.end()) throw std::invalid_argument("unbound " + n);
            return it->second;
        });
    }
};

NF horner(const QFunc& f, const NF& u) {
    auto h = [&](const QPoly& p) {
        NF acc(0);
        for (int i = p.degree(); i >= 0; --i) acc = acc * u + NF(p.coeff(i));
        return acc;
    };
    return h(f.num()) / h(f.den());
}

// Residual of the record at one point; `cube_factor` is a^3 when X carries `a`.
std::optional<NF> residual_at(const FibrationRecord& rec, const WeierstrassCurve& e, const std::string& param,
                              const Specialization& s) {
    try {
        NF u = s.eval(param);
        NF x = s.eval(rec.x_expr, {{"u", u}});
        NF y = s.eval(rec.y_expr, {{"u", u}});
        NF x3 = x * x * x;
        NF x2 = x * x;
        if (rec.field) {
            // X = a * X0 with a^3 = 4 and a short model with a2 = a4 = 0.
            REQUIRE(e.a2.is_zero());
            REQUIRE(e.a4.is_zero());
            x3 = NF(4) * x3;
            x2 = NF(0);
        }
        return y * y + horner(e.a1, u) * x * y + horner(e.a3, u) * y - x3 - horner(e.a2, u) * x2 -
               horner(e.a4, u) * x - horner(e.a6, u);
    } catch (const std::domain_error&) {
        return std::nullopt;  // the specialization hits a pole
    }
}

const Catalog& cat() { return builtin_catalog(); }

}  // namespace

TEST_CASE("builtin catalog parses") {
    REQUIRE(cat().records.size() == 6);
    for (int id = 1; id <= 6; ++id) CHECK(cat().record(id).id == id);
    CHECK(cat().record(1).parameters.size() == 2);
    CHECK(cat().record(2).equations.size() == 2);
    CHECK(cat().record(6).points.size() == 2);
    CHECK(cat().record(1).field.has_value());
    CHECK(cat().neighbors.size() == 2);
    CHECK(cat().twist.has_value());
    CHECK(cat().functions.size() == 7);
    CHECK_THROWS_AS(cat().record(7), std::out_of_range);
    CHECK(parse_summary("I12* + I3 + 3I1") == std::map<std::string, int>{{"I12*", 1}, {"I3", 1}, {"I1", 3}});
    CHECK(parse_summary("III* + I6* + 3I1") == parse_summary("I6* + 3I1 + III*"));
}

TEST_CASE("catalog text errors") {
    CHECK_THROWS_AS(parse_catalog("[fibration 1]\nparameter = t\n"), CatalogError);
    CHECK_THROWS_AS(parse_catalog("[nonsense]\n"), CatalogError);
    CHECK_THROWS_AS(parse_catalog("key = 1\n"), CatalogError);
    CHECK_THROWS_AS(parse_catalog("[fibration 1]\nnot a pair\n"), CatalogError);
    CHECK_THROWS_AS(parse_catalog("[fibration 1]\nparameter = t\nequation = 0;0;0;0;1\nX = t\nY = t\n"
                                  "mw.points = Q (0, 0)\n"),
                    CatalogError);
    CHECK_THROWS_AS(parse_catalog("[fibration 1]\nparameter = t\nequation = 0;0;0;0;1\nX = t\nY = t\nbogus = 1\n"),
                    CatalogError);
    auto one = parse_catalog("[fibration 5]\nparameter = y1\nequation = 0;0;0;0;(u^2-1)^4\nX = (u^2-1)*t\n"
                             "Y = (u^2-1)^2*y2\nfibers = IV*@u-1; IV*@u+1; IV*@inf\n");
    REQUIRE(one.records.size() == 1);
    CHECK(verify_change_of_variables(one.records[0], one.records[0].equations[0].value).ok);
}

TEST_CASE("equation variants resolve by fiber configuration") {
    auto r2 = resolve_variant(cat().record(2));
    REQUIRE(r2.ok());
    CHECK(r2.label == "table");
    CHECK(r2.matching == std::vector<std::string>{"table"});
    auto r6 = resolve_variant(cat().record(6));
    REQUIRE(r6.ok());
    CHECK(r6.label == "table");
    CHECK(r6.curve->a4 == parse_qfunc("u^6"));
    CHECK(resolve_variant(cat().record(5)).label == "printed");

    // Independent check: ord_0 of the discriminant 16 a4^2 (a2^2 - 4 a4).
    auto ord0 = [](const WeierstrassCurve& e) {
        QFunc d = QFunc(16) * e.a4 * e.a4 * (e.a2 * e.a2 - QFunc(4) * e.a4);
        return ord_at(d, Place::finite(QPoly::x()));
    };
    CHECK(ord0(cat().record(2).equations[0].value) == 18);
    CHECK(ord0(cat().record(2).equations[1].value) == 16);

    auto bad = cat().record(2);
    bad.equations.erase(bad.equations.begin());
    auto none = resolve_variant(bad);
    CHECK_FALSE(none.ok());
    CHECK(none.message.find("no equation variant") != std::string::npos);
    auto twice = cat().record(2);
    twice.equations[1] = twice.equations[0];
    twice.equations[1].label = "copy";
    CHECK_FALSE(resolve_variant(twice).ok());
}

TEST_CASE("change of variables for all six fibrations") {
    for (const auto& rec : cat().records) {
        auto var = resolve_variant(rec);
        REQUIRE(var.ok());
        auto cov = verify_change_of_variables(rec, *var.curve);
        CHECK_MESSAGE(cov.ok, "fibration ", rec.id);
    }
    const auto& f1 = cat().record(1);
    auto cov = verify_change_of_variables(f1, f1.equations[0].value);
    CHECK(cov.parameter_label == "table");
    CHECK(cov.parameter_text == "2*(y2+1)/(y1-1)^2");

    auto broken = cat().record(3);
    broken.y_expr = "4*(u^3*(y1+1)*(y1-1)^2+y2-1)/(y1-1)^3";
    CHECK_FALSE(verify_change_of_variables(broken, broken.equations[0].value).ok);
    broken = cat().record(3);
    broken.x_expr = "2*(y2+1)/(y1-y1)";
    auto div0 = verify_change_of_variables(broken, broken.equations[0].value);
    CHECK_FALSE(div0.ok);
    REQUIRE_FALSE(div0.notes.empty());
    CHECK(div0.notes[0].find("division by zero") != std::string::npos);
}

TEST_CASE("property: residuals vanish at random specializations") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    int checked = 0;
    for (const auto& rec : cat().records) {
        auto var = resolve_variant(rec);
        REQUIRE(var.ok());
        auto cov = verify_change_of_variables(rec, *var.curve);
        int here = 0;
        while (here < 20) {
            auto s = Specialization::make(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
            if (!s) continue;
            auto r = residual_at(rec, *var.curve, cov.parameter_text, *s);
            if (!r) continue;
            CHECK_MESSAGE(r->is_zero(), "fibration ", rec.id);
            ++here;
        }
        checked += here;
    }
    CHECK(checked >= 120);

    // The rejected Fibration 1 parameter fails at a generic point.
    const auto& f1 = cat().record(1);
    auto s = Specialization::make(Rational(3), Rational(5, 2));
    REQUIRE(s);
    auto r = residual_at(f1, f1.equations[0].value, "2*(y1+1)/(y1-1)^2", *s);
    REQUIRE(r);
    CHECK_FALSE(r->is_zero());
}

TEST_CASE("point variants resolve by curve membership") {
    auto e4 = *resolve_variant(cat().record(4)).curve;
    auto p4 = resolve_points(cat().record(4), e4);
    CHECK(p4.ok);
    CHECK(p4.label == "table");
    auto e6 = *resolve_variant(cat().record(6)).curve;
    auto p6 = resolve_points(cat().record(6), e6);
    CHECK(p6.ok);
    CHECK(p6.label == "text");
    // Oracle: y^2 - (x^3 + a2 x^2 + a4 x) by direct substitution.
    auto on = [&](const char* x, const char* y) {
        QFunc X = parse_qfunc(x), Y = parse_qfunc(y);
        return (Y * Y - X * X * X - e6.a2 * X * X - e6.a4 * X).is_zero();
    };
    CHECK(on("u^3", "2*u^3"));
    CHECK(on("u^3", "-2*u^3"));
    CHECK_FALSE(on("u^3", "2*u^6"));

    auto q = derive_point("(0, -u^6) - G1", e4, p4.points);
    CHECK(q == CurvePoint::affine(parse_qfunc("-2*u^3"), parse_qfunc("u^6-2*u^3")));
    CHECK(e4.contains(q));
    auto config = fiber_configuration(e4);
    CHECK(height(e4, q, config) == Rational(3, 2));
    CHECK_FALSE(e4.contains(CurvePoint::affine(parse_qfunc("-2*u^6"), parse_qfunc("-u^3"))));
    CHECK_THROWS_AS(derive_point("(0, 0) + G2", e4, p4.points), CatalogError);
}

TEST_CASE("per-fibration verification") {
    for (const auto& rec : cat().records) {
        auto rep = verify_fibration(cat(), rec);
        CHECK_MESSAGE(rep.pass(), "fibration ", rec.id);
        CHECK(rep.check("euler_ok"));
    }
    auto f3 = verify_fibration(cat(), cat().record(3));
    CHECK(f3.summary == "I6* + III* + 3I1");
    CHECK(f3.heights == std::vector<std::string>{"3/2"});
    auto f4 = verify_fibration(cat(), cat().record(4));
    CHECK(f4.heights == std::vector<std::string>{"3/2"});
    bool logged = false;
    for (const auto& n : f4.notes) logged = logged || n.find("resolved to the table variant") != std::string::npos;
    CHECK(logged);
    CHECK_THROWS_AS(f4.check("no_such_check"), std::out_of_range);

    // A wrong claimed height is caught.
    auto wrong = cat().record(3);
    wrong.heights = {Rational(3)};
    auto bad = verify_fibration(cat(), wrong);
    CHECK_FALSE(bad.check("heights_ok"));
    CHECK_FALSE(bad.pass());
    // So is a wrong torsion order.
    auto wrong_t = cat().record(5);
    wrong_t.points[0].value[0].order = 6;
    CHECK_FALSE(verify_fibration(cat(), wrong_t).check("torsion_ok"));
}

TEST_CASE("cross-fibration identities") {
    auto n = neighbor_consistency(cat());
    REQUIRE(n.size() == 2);
    for (const auto& r : n) {
        CHECK(r.identity);
        CHECK(r.curve);
        CHECK(r.control_rejected);
    }
    CHECK(twist_check(cat()));
    for (const auto& c : q_curve_identities(cat())) CHECK_MESSAGE(c.ok, c.name);
    CHECK(elimination_check(cat()));
    auto cubic = cubic_check(cat());
    CHECK(cubic.map_verified);
    CHECK(cubic.same_j);
    CHECK(cubic.same_fibers);
    CHECK(cubic.sixth_power_ratio);

    // Perturbed neighbor map breaks the chain.
    Catalog broken = cat();
    broken.neighbors[1].parameter = "(u^6+X-Y)/(u^2*X)";
    CHECK_FALSE(neighbor_consistency(broken)[1].identity);
    broken = cat();
    broken.twist->d = parse_qfunc("-u");
    CHECK_FALSE(twist_check(broken));
}

TEST_CASE("sixth powers over Q(cbrt 4)") {
    CHECK(is_sixth_power_over_cbrt4(parse_qfunc("64*u^6")));
    CHECK(is_sixth_power_over_cbrt4(parse_qfunc("16/(u^6*(u-1)^6)")));
    CHECK(is_sixth_power_over_cbrt4(parse_qfunc("256")));
    CHECK_FALSE(is_sixth_power_over_cbrt4(parse_qfunc("2")));
    CHECK_FALSE(is_sixth_power_over_cbrt4(parse_qfunc("-1")));
    CHECK_FALSE(is_sixth_power_over_cbrt4(parse_qfunc("u^3")));
}

TEST_CASE("place inversion") {
    CHECK(invert_place(Place::infinity()) == Place::finite(QPoly::x()));
    CHECK(invert_place(Place::finite(QPoly::x())).is_infinity());
    // u -> 2/u sends u^3 - 4 to u^3 - 2.
    CHECK(invert_place(Place::finite(parse_qpoly("u^3-4")), Rational(2)) == Place::finite(parse_qpoly("u^3-2")));
    CHECK(invert_place(Place::finite(parse_qpoly("u-1")), Rational(2)) == Place::finite(parse_qpoly("u-2")));
    const auto& nb = cat().neighbors[1];
    auto target = resolve_variant(cat().record(2));
    CHECK(configurations_correspond(fiber_configuration(nb.curve), target.config, Rational(2)));
    CHECK_FALSE(configurations_correspond(fiber_configuration(nb.curve), target.config, Rational(1)));
}

TEST_CASE("divisor checks") {
    auto plain = divisor_checks(cat(), false);
    CHECK_FALSE(plain.ok());
    auto fixed = divisor_checks(cat(), true);
    CHECK(fixed.ok());
    REQUIRE(fixed.corrections.size() == 1);
    CHECK(fixed.corrections[0].find("3*E'{1,2} (occurrence 2 of 2) -> 3*E'{1,3}") != std::string::npos);
    auto only = divisor_checks(cat(), false, "func");
    CHECK(only.ok());
    CHECK(only.trivial.size() == 5);
    CHECK(divisor_checks(cat(), false, "div4").fibers.size() == 1);
}

TEST_CASE("report round trip") {
    Report rep = verify_catalog(cat(), {3, 4});
    CHECK(rep.pass);
    REQUIRE(rep.fibrations.size() == 2);
    CHECK_THROWS_AS(rep.fibrations[0].check("neighbor_ok"), std::out_of_range);
    CHECK(rep.fibrations[1].check("neighbor_ok"));
    CHECK(rep.identities.empty());

    Report full = verify_catalog(cat());
    CHECK(full.pass);
    std::string json = report_to_json(full);
    Report back = report_from_json(json);
    CHECK(report_to_json(back) == json);
    CHECK(back.fibrations.size() == 6);
    CHECK(back.fibrations[2].heights == std::vector<std::string>{"3/2"});
    CHECK(json.find("\"3/2\"") != std::string::npos);
    CHECK(report_to_text(back) == report_to_text(full));
    CHECK_THROWS_AS(report_from_json("{\"version\": 1}"), std::invalid_argument);
    CHECK_THROWS_AS(report_from_json("not json"), std::invalid_argument);
}
