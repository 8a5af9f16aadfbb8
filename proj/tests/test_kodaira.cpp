#include <doctest.h>

#include <random>

#include "k3fib/kodaira.hpp"
#include "k3fib/parse.hpp"

using namespace k3fib;

namespace {

QFunc f(const char* s) { return parse_qfunc(s); }
WeierstrassCurve curve(const char* s) { return parse_curve(s); }
Place place(const char* p) { return Place::finite(parse_qpoly(p, "u")); }

// Test-side oracle: in residue characteristic 0 a fiber is determined by the
// valuations of (c4, c6, disc) on a minimal model.
std::string oracle_type(const WeierstrassCurve& e, const Place& v) {
    auto iv = e.invariants();
    auto val = [&](const QFunc& g) { return g.is_zero() ? 1000000 : ord_at(g, v); };
    int a = val(iv.c4), b = val(iv.c6), d = val(iv.disc);
    // Integral and minimal: shift by multiples of (4, 6, 12).
    int k = std::min({a >= 1000000 ? 1000 : a / 4 - (a < 0 && a % 4 ? 1 : 0),
                      b >= 1000000 ? 1000 : b / 6 - (b < 0 && b % 6 ? 1 : 0),
                      d / 12 - (d < 0 && d % 12 ? 1 : 0)});
    a -= 4 * k, b -= 6 * k, d -= 12 * k;
    if (d == 0) return "I0";
    if (a == 0) return "I" + std::to_string(d);
    switch (d) {
        case 2: return "II";
        case 3: return "III";
        case 4: return "IV";
        case 8: return "IV*";
        case 9: return "III*";
        case 10: return "II*";
        default: break;
    }
    if (a == 2 && b == 3 && d > 6) return "I" + std::to_string(d - 6) + "*";
    if (d == 6) return "I0*";
    return "?";
}

std::vector<std::string> types(const std::vector<FiberData>& c) {
    std::vector<std::string> out;
    for (const auto& fd : c) out.push_back(fd.place.str() + ":" + fd.type.str());
    return out;
}

}  // namespace

TEST_CASE("ord_at") {
    CHECK(ord_at(f("u^10*(u-1)^4"), place("u")) == 10);
    CHECK(ord_at(f("u^10*(u-1)^4"), place("u-1")) == 4);
    CHECK(ord_at(f("u^3+1"), place("u^2-u+1")) == 1);
    CHECK(ord_at(f("1/u^2"), Place::infinity()) == 2);
    CHECK(ord_at(f("(u+1)/(u^2+1)^3"), place("u^2+1")) == -3);
    CHECK_THROWS_AS(ord_at(QFunc(), place("u")), std::domain_error);
    CHECK_THROWS_AS(place("u^2-1"), std::invalid_argument);
    CHECK_THROWS_AS(place("2*u"), std::invalid_argument);
}

TEST_CASE("Kodaira symbol data") {
    for (const char* s : {"I0", "I1", "I18", "I0*", "I6*", "II", "III", "IV", "IV*", "III*", "II*"})
        CHECK(KodairaType::parse(s).str() == s);
    CHECK(KodairaType::parse("I6*").euler() == 12);
    CHECK(KodairaType::parse("I6*").components() == 11);
    CHECK(KodairaType::parse("I6*").component_group() == std::vector<int>{2, 2});
    CHECK(KodairaType::parse("I3*").component_group() == std::vector<int>{4});
    CHECK(KodairaType::parse("IV*").root_discriminant() == 3);
    CHECK(KodairaType::parse("I18").root_discriminant() == 18);
    CHECK(KodairaType::parse("II*").components() == 9);
    CHECK_THROWS_AS(KodairaType::parse("V"), std::invalid_argument);
    CHECK_THROWS_AS(KodairaType::parse("I"), std::invalid_argument);
}

TEST_CASE("fibers of the six elliptic fibrations") {
    auto c1 = fiber_configuration(curve("0;0;0;0;u^5*(u-1)^2"));
    CHECK(types(c1) == std::vector<std::string>{"u:II*", "u-1:IV", "inf:II*"});
    CHECK(configuration_summary(c1) == "2II* + IV");

    auto c2 = fiber_configuration(curve("0;-2*u*(u^3-2);0;u^8;0"));
    CHECK(configuration_summary(c2) == "I12* + I3 + 3I1");

    auto c3 = fiber_configuration(curve("0;4*u^3;0;-4*u^3;0"));
    CHECK(configuration_summary(c3) == "I6* + III* + 3I1");
    CHECK(c3.back().place.is_infinity());
    CHECK(c3.back().type.str() == "I6*");

    auto c4 = fiber_configuration(curve("0;1;0;-2*u^6;u^12"));
    CHECK(c4.front().type.str() == "I18");
    CHECK(configuration_summary(c4) == "I18 + 6I1");

    auto c5 = fiber_configuration(curve("0;0;0;0;(u^2-1)^4"));
    CHECK(configuration_summary(c5) == "3IV*");

    auto c6 = fiber_configuration(curve("0;-2*(u^3-2);0;u^6;0"));
    CHECK(configuration_summary(c6) == "I12 + I3* + 3I1");

    for (const auto* c : {&c1, &c2, &c3, &c4, &c5, &c6}) CHECK(euler_sum(*c) == 24);
}

TEST_CASE("non-integral and non-minimal inputs") {
    // Twisting by u^2 is an isomorphism over Q(u); the configuration is unchanged.
    auto e = curve("0;0;0;0;(u^2-1)^4");
    auto tw = quadratic_twist(e, f("u^2*(u-3)^2"));
    CHECK(configuration_summary(fiber_configuration(tw)) == "3IV*");
    auto scaled = curve("0;0;0;0;(u^2-1)^4/u^12");
    CHECK(configuration_summary(fiber_configuration(scaled)) == "3IV*");
    CHECK_THROWS_AS(fiber_configuration(curve("0;0;0;0;0")), DegenerateCurve);
}

TEST_CASE("local model transform sends points onto the minimal model") {
    auto e = curve("0;1;0;-2*u^6;u^12");
    CurvePoint p = CurvePoint::affine(f("2*u^3"), f("2*u^3+u^6"));
    for (const auto& fd : fiber_configuration(e)) {
        CurvePoint q = fd.model.to_local(p);
        CHECK(fd.model.minimal.contains(q));
    }
    auto fd = tate_at(curve("0;0;0;0;(u^2-1)^4"), Place::infinity());
    CHECK(fd.type.str() == "IV*");
    CHECK(fd.model.minimal.contains(fd.model.to_local(CurvePoint::affine(QFunc(0), f("(u^2-1)^2")))));
}

TEST_CASE("property: Tate agrees with the valuation oracle") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> coef(-2, 2), deg(0, 4), shape(0, 3);
    const QPoly u = QPoly::x();
    const QPoly factors[] = {u, u - QPoly(1), u + QPoly(1), u * u + QPoly(1), u * u + u + QPoly(1)};
    auto rand_poly = [&](int maxdeg) {
        QPoly p;
        for (int i = 0; i <= maxdeg; ++i) p += QPoly::monomial(Rational(coef(rng)), i);
        return p;
    };
    int checked = 0;
    for (int iter = 0; iter < 150; ++iter) {
        // Build a4, a6 with repeated factors so that additive fibers occur.
        QPoly a4 = rand_poly(deg(rng) % 3), a6 = rand_poly(deg(rng) % 3);
        const QPoly& p = factors[iter % 5];
        a4 = a4 * p.pow(shape(rng));
        a6 = a6 * p.pow(shape(rng) + 1);
        if (iter % 4 == 0) a4 = QPoly();
        WeierstrassCurve e{0, QFunc(iter % 3 == 0 ? QPoly(1) : QPoly()), 0, QFunc(a4), QFunc(a6)};
        if (e.discriminant().is_zero()) continue;
        auto config = fiber_configuration(e);
        for (const auto& fd : config) {
            CHECK_MESSAGE(fd.type.str() == oracle_type(e, fd.place), e.str(), " at ", fd.place.str());
            CHECK(fd.type.euler() == fd.ord_disc);
        }
        // Discriminant degree bookkeeping: euler sum is 12 * (arithmetic genus + 1) for a minimal model.
        CHECK(euler_sum(config) % 12 == 0);
        ++checked;
    }
    CHECK(checked >= 100);
}
