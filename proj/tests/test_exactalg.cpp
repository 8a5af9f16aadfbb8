#include <doctest.h>

#include <random>

#include "k3fib/factor.hpp"
#include "k3fib/number_field.hpp"
#include "k3fib/ratfunc.hpp"
#include "k3fib/rational.hpp"
#include "k3fib/unipoly.hpp"

using namespace k3fib;

namespace {

QPoly qp(std::initializer_list<long> low_to_high) {
    std::vector<Rational> v;
    for (long c : low_to_high) v.emplace_back(c);
    return QPoly(std::move(v));
}

const QPoly U = QPoly::x();

struct Gen {
    std::mt19937_64 rng{20240611};
    Rational rat(long range = 9) {
        std::uniform_int_distribution<long> n(-range, range), d(1, range);
        return Rational(n(rng), d(rng));
    }
    QPoly poly(int max_deg) {
        std::uniform_int_distribution<int> deg(-1, max_deg);
        int d = deg(rng);
        std::vector<Rational> v;
        for (int i = 0; i <= d; ++i) v.push_back(rat());
        return QPoly(std::move(v));
    }
};

}  // namespace

TEST_CASE("rational parse and arithmetic") {
    CHECK(Rational::parse("3/2") + Rational(1, 2) == Rational(2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("6/-4"), std::invalid_argument);
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(-1, 2) < Rational(1, 3));
}

TEST_CASE("polynomial division") {
    auto [q, r] = divmod(U * U - 1, U - 1);
    CHECK(q == U + 1);
    CHECK(r.is_zero());

    auto [q2, r2] = divmod(qp({4, 0, 0, 0, 0, 0, 27}), U * U);
    CHECK(q2 == qp({0, 0, 0, 0, 27}));
    CHECK(r2 == QPoly(4));

    CHECK_THROWS_AS(divmod(U, QPoly()), std::domain_error);
    CHECK_THROWS_AS((U * U).exact_div(U + 1), std::domain_error);
    CHECK(QPoly().degree() == -1);
    CHECK(qp({0, 4, 0, 0, -2}).str() == "-2*u^4+4*u");
}

TEST_CASE("gcd and extended gcd") {
    QPoly a = (U - 1) * (U + 2) * (U + 2);
    QPoly b = (U + 2) * (U * U + 1);
    CHECK(gcd(a, b) == U + 2);
    auto [g, s, t] = ext_gcd(a, b);
    CHECK(g == U + 2);
    CHECK(s * a + t * b == g);
    CHECK(gcd(QPoly(), QPoly()).is_zero());
}

TEST_CASE("square-free decomposition") {
    auto sf = squarefree_factor(U.pow(10) * (U - 1).pow(4));
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].poly == U - 1);
    CHECK(sf[0].multiplicity == 4);
    CHECK(sf[1].poly == U);
    CHECK(sf[1].multiplicity == 10);
    CHECK(squarefree_factor(QPoly(5)).empty());
    CHECK_THROWS_AS(squarefree_factor(QPoly()), std::domain_error);
}

TEST_CASE("irreducible factorization over Q") {
    auto f = irreducible_factor(U.pow(3) + 1);
    REQUIRE(f.size() == 2);
    CHECK(f[0].poly == U + 1);
    CHECK(f[1].poly == U * U - U + 1);

    CHECK(is_irreducible(qp({4, 0, 0, 0, 0, 0, 27})));
    CHECK(is_irreducible(U * U + U + 1));
    CHECK_FALSE(is_irreducible(U.pow(4) + 4));  // (u^2+2u+2)(u^2-2u+2)
    CHECK_FALSE(is_irreducible((U * U + 1) * (U.pow(3) + U + 1)));

    auto g = irreducible_factor(U.pow(18) * (U.pow(3) - 1).scaled(Rational(-256)));
    REQUIRE(g.size() == 3);
    CHECK(g[0].poly == U);
    CHECK(g[0].multiplicity == 18);
    CHECK(g[1].poly == U - 1);
    CHECK(g[2].poly == U * U + U + 1);

    auto r = rational_roots(qp({-1, 1, 2}) * (U - Rational(1, 3)));
    CHECK(r == std::vector<Rational>{Rational(-1), Rational(1, 3), Rational(1, 2)});
}

TEST_CASE("number field arithmetic") {
    auto K = NumberField::create(U.pow(3) - 4);
    auto a = NumberFieldElement::generator(K);
    CHECK(a.inverse() == a * a / NumberFieldElement(4));
    CHECK((a + 1).inverse() == (a * a - a + 1) / NumberFieldElement(5));
    CHECK(a.pow(3) == NumberFieldElement(4));
    CHECK((a * a / NumberFieldElement(4)).str() == "1/4*a^2");
    CHECK_THROWS_AS(NumberField::create(U * U - 4), std::invalid_argument);
    CHECK_THROWS_AS(NumberFieldElement(K, QPoly()).inverse(), std::domain_error);

    auto L = NumberField::create(U * U + 1, "i");
    CHECK_THROWS_AS(a + NumberFieldElement::generator(L), std::logic_error);
    CHECK(NumberFieldElement(3) * a == a + a + a);
}

TEST_CASE("rational functions") {
    using RF = RatFunc<Rational>;
    RF u = RF::var();
    RF f = (u * u - 1) / (u - 1);
    CHECK(f == u + 1);
    CHECK(f.is_polynomial());
    RF g = RF(2) / (u * u);
    CHECK(g.str() == "2/u^2");
    CHECK(g.compose(RF(2) / u) == u * u / RF(2));
    CHECK(g.eval(Rational(2)) == Rational(1, 2));
    CHECK_THROWS_AS(g.eval(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(RF().inverse(), std::domain_error);

    using RF2 = RatFunc<RF>;
    RF2 m = RF2::var();
    RF2 x = (m * m - RF2(u)) / (m - RF2(u));
    CHECK(x.num().degree() == 2);
}

TEST_CASE("property: field axioms for Rational and QPoly") {
    Gen gen;
    for (int i = 0; i < 200; ++i) {
        Rational a = gen.rat(), b = gen.rat(), c = gen.rat();
        CHECK(a + (b + c) == (a + b) + c);
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));

        QPoly p = gen.poly(6), q = gen.poly(4), s = gen.poly(3);
        CHECK(p * (q + s) == p * q + p * s);
        if (!q.is_zero()) {
            auto [quo, rem] = divmod(p, q);
            CHECK(quo * q + rem == p);
            CHECK(rem.degree() < q.degree());
        }
    }
}

TEST_CASE("property: number field inverse") {
    Gen gen;
    auto K = NumberField::create(U.pow(3) - 4);
    for (int i = 0; i < 150; ++i) {
        NumberFieldElement x(K, gen.poly(2));
        if (x.is_zero()) continue;
        CHECK((x * x.inverse()).is_one());
    }
}

TEST_CASE("property: factorization reconstructs input") {
    Gen gen;
    for (int i = 0; i < 120; ++i) {
        QPoly p = gen.poly(3) * gen.poly(3) * gen.poly(2);
        if (p.degree() < 1) continue;
        QPoly prod(1);
        for (const auto& f : irreducible_factor(p)) {
            CHECK(f.poly.leading().is_one());
            prod *= f.poly.pow(f.multiplicity);
        }
        CHECK(prod == p.monic());
    }
}

TEST_CASE("property: rational function field laws") {
    using RF = RatFunc<Rational>;
    Gen gen;
    for (int i = 0; i < 100; ++i) {
        QPoly d1 = gen.poly(2), d2 = gen.poly(2);
        if (d1.is_zero() || d2.is_zero()) continue;
        RF a(gen.poly(3), d1), b(gen.poly(3), d2);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK(gcd(a.num(), a.den()).degree() <= 0);
    }
}

TEST_CASE("property: modular gcd agrees with Euclid over Q") {
    Gen gen;
    int nontrivial = 0;
    for (int i = 0; i < 150; ++i) {
        QPoly c = gen.poly(3), p = gen.poly(4), q = gen.poly(4);
        if (c.is_zero()) c = QPoly(Rational(1));
        QPoly a = p * c, b = q * c;
        QPoly fast = gcd(a, b);
        CHECK(fast == gcd<Rational>(a, b));
        if (!a.is_zero() || !b.is_zero()) {
            CHECK(fast.leading().is_one());
            if (!a.is_zero()) CHECK(a.divisible_by(fast));
            if (!b.is_zero()) CHECK(b.divisible_by(fast));
        }
        nontrivial += fast.degree() > 0;
    }
    CHECK(nontrivial > 50);
}
