#include "k3fib/factor.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <map>

namespace k3fib {

namespace {

using ModPoly = std::vector<std::int64_t>;  // low -> high, coefficients in [0, p)

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void mp_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    mp_trim(r);
    return r;
}

// Returns (q, r); b must be nonzero.
std::pair<ModPoly, ModPoly> mp_divmod(ModPoly a, const ModPoly& b, std::int64_t p) {
    mp_trim(a);
    if (a.size() < b.size()) return {{}, a};
    std::int64_t inv = mod_pow(b.back(), p - 2, p);
    ModPoly q(a.size() - b.size() + 1, 0);
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size() - 1;; --k) {
        std::int64_t f = a[k] * inv % p;
        q[k - db] = f;
        if (f != 0)
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::size_t idx = k - db + j;
                a[idx] = ((a[idx] - f * b[j]) % p + p) % p;
            }
        if (k == db) break;
    }
    a.resize(b.size() - 1);
    mp_trim(a);
    mp_trim(q);
    return {q, a};
}

ModPoly mp_gcd(ModPoly a, ModPoly b, std::int64_t p) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        ModPoly r = mp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::int64_t inv = mod_pow(a.back(), p - 2, p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

ModPoly mp_derivative(const ModPoly& a, std::int64_t p) {
    ModPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<std::int64_t>(i) % p);
    mp_trim(r);
    return r;
}

ModPoly mp_sub(ModPoly a, const ModPoly& b, std::int64_t p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    mp_trim(a);
    return a;
}

// Degrees of the irreducible factors of a square-free monic f mod p
// (distinct-degree factorization).
std::vector<int> ddf_degrees(ModPoly f, std::int64_t p) {
    std::vector<int> degs;
    ModPoly x = {0, 1};
    ModPoly h = x;
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        // h <- h^p mod f
        ModPoly acc = {1}, base = h;
        for (std::int64_t e = p; e > 0; e >>= 1) {
            if (e & 1) acc = mp_divmod(mp_mul(acc, base, p), f, p).second;
            base = mp_divmod(mp_mul(base, base, p), f, p).second;
        }
        h = acc;
        ModPoly g = mp_gcd(f, mp_sub(h, x, p), p);
        int gd = static_cast<int>(g.size()) - 1;
        if (gd > 0) {
            for (int k = 0; k < gd / d; ++k) degs.push_back(d);
            f = mp_divmod(f, g, p).first;
            h = mp_divmod(h, f, p).second;
        }
    }
    if (f.size() > 1) degs.push_back(static_cast<int>(f.size()) - 1);
    return degs;
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

QPoly from_integer(const std::vector<mpz_class>& c) {
    std::vector<Rational> v;
    v.reserve(c.size());
    for (const auto& x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

Rational eval_at(const QPoly& p, const Rational& x) { return p.eval(x); }

constexpr int kSievePrimes = 40;
constexpr long kKroneckerBudget = 2'000'000;

// Possible degrees of a proper factor of the square-free integer polynomial g,
// as a bitset over [0, deg g].
std::bitset<64> degree_sieve(const std::vector<mpz_class>& g) {
    int n = static_cast<int>(g.size()) - 1;
    std::bitset<64> possible;
    for (int d = 0; d <= n; ++d) possible.set(static_cast<std::size_t>(d));
    int used = 0;
    for (std::int64_t p = 3; used < kSievePrimes && p < 2000; p += 2) {
        bool prime = true;
        for (std::int64_t q = 3; q * q <= p; q += 2)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        mpz_class lc = g.back();
        if (lc % p == 0) continue;
        ModPoly f;
        for (const auto& c : g) {
            mpz_class r = c % p;
            if (r < 0) r += p;
            f.push_back(r.get_si());
        }
        std::int64_t inv = mod_pow(f.back(), p - 2, p);
        for (auto& c : f) c = c * inv % p;
        if (mp_gcd(f, mp_derivative(f, p), p).size() > 1) continue;
        ++used;
        std::bitset<64> sums;
        sums.set(0);
        for (int d : ddf_degrees(f, p)) sums |= sums << static_cast<std::size_t>(d);
        possible &= sums;
        bool only_trivial = true;
        for (int d = 1; d < n; ++d)
            if (possible.test(static_cast<std::size_t>(d))) only_trivial = false;
        if (only_trivial) break;
    }
    return possible;
}

// Kronecker search for a factor of exact degree d of the primitive integer
// polynomial g. Returns the monic factor over Q or zero if none exists.
QPoly kronecker_factor(const QPoly& g, int d) {
    std::vector<Rational> xs;
    std::vector<std::vector<mpz_class>> divs;
    for (long k = 0; static_cast<int>(xs.size()) < d + 1; ++k) {
        long x = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
        Rational v = eval_at(g, Rational(x));
        if (v.is_zero()) continue;  // cannot happen without rational roots
        xs.emplace_back(x);
        divs.push_back(divisors(v.numerator()));
    }
    long work = 0;
    std::vector<Rational> ys(static_cast<std::size_t>(d + 1));
    QPoly found;
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == xs.size()) {
            if (++work > kKroneckerBudget) throw std::runtime_error("Kronecker factor search budget exceeded");
            // Lagrange interpolation through (xs, ys).
            QPoly h;
            for (std::size_t a = 0; a < xs.size(); ++a) {
                QPoly term(ys[a]);
                for (std::size_t b = 0; b < xs.size(); ++b) {
                    if (a == b) continue;
                    term *= QPoly(std::vector<Rational>{-xs[b], Rational(1)});
                    term = term.scaled((xs[a] - xs[b]).inverse());
                }
                h += term;
            }
            if (h.degree() != d) return false;
            if (!g.divisible_by(h)) return false;
            found = h.monic();
            return true;
        }
        for (const auto& dv : divs[i]) {
            for (int s : {1, -1}) {
                if (i == 0 && s == -1) continue;  // fix the overall sign
                ys[i] = Rational(mpz_class(dv * s));
                if (search(i + 1)) return true;
            }
        }
        return false;
    };
    search(0);
    return found;
}

void factor_squarefree(const QPoly& f, std::vector<QPoly>& out) {
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(f.monic());
        return;
    }
    auto roots = rational_roots(f);
    if (!roots.empty()) {
        QPoly rest = f;
        for (const auto& r : roots) {
            QPoly lin(std::vector<Rational>{-r, Rational(1)});
            out.push_back(lin);
            rest = rest / lin;
        }
        factor_squarefree(rest, out);
        return;
    }
    if (f.degree() <= 3) {
        out.push_back(f.monic());
        return;
    }
    auto g = primitive_integer_coeffs(f);
    auto possible = degree_sieve(g);
    QPoly gq = from_integer(g);
    for (int d = 2; 2 * d <= f.degree(); ++d) {
        if (!possible.test(static_cast<std::size_t>(d)) && !possible.test(static_cast<std::size_t>(f.degree() - d)))
            continue;
        QPoly h = kronecker_factor(gq, d);
        if (!h.is_zero()) {
            factor_squarefree(h, out);
            factor_squarefree(f / h, out);
            return;
        }
    }
    out.push_back(f.monic());
}

}  // namespace

namespace {

using ZPoly = std::vector<mpz_class>;  // low -> high

void z_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void z_make_primitive(ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) g = gcd(g, c);
    if (g > 1)
        for (auto& c : a) c /= g;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly z_pseudo_remainder(ZPoly a, const ZPoly& b) {
    const std::size_t db = b.size() - 1;
    const mpz_class& lb = b.back();
    while (a.size() >= b.size()) {
        mpz_class top = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= top * b[j];
        a.pop_back();
        z_trim(a);
    }
    return a;
}

// Degree of gcd(a, b) mod p is an upper bound when p divides neither leading coefficient.
bool coprime_mod_p(const ZPoly& a, const ZPoly& b) {
    for (std::int64_t p : {2147483647LL, 2147483629LL, 2147483587LL}) {
        mpz_class pz = p;
        if (a.back() % pz == 0 || b.back() % pz == 0) continue;
        auto reduce = [&](const ZPoly& z) {
            ModPoly m;
            for (const auto& c : z) {
                mpz_class r = c % pz;
                if (r < 0) r += pz;
                m.push_back(r.get_si());
            }
            return m;
        };
        return mp_gcd(reduce(a), reduce(b), p).size() == 1;
    }
    return false;
}

}  // namespace

QPoly gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return QPoly(Rational(1));
    ZPoly x = primitive_integer_coeffs(a), y = primitive_integer_coeffs(b);
    if (coprime_mod_p(x, y)) return QPoly(Rational(1));
    if (x.size() < y.size()) std::swap(x, y);
    while (true) {
        ZPoly r = z_pseudo_remainder(x, y);
        if (r.empty()) return from_integer(y).monic();
        if (r.size() == 1) return QPoly(Rational(1));
        z_make_primitive(r);
        x = std::move(y);
        y = std::move(r);
    }
}

std::vector<mpz_class> primitive_integer_coeffs(const QPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, c.denominator());
    std::vector<mpz_class> v;
    mpz_class g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_class x = c.numerator() * (l / c.denominator());
        v.push_back(x);
        g = gcd(g, x);
    }
    if (g == 0) return v;
    if (v.back() < 0) g = -g;
    for (auto& x : v) x /= g;
    return v;
}

std::vector<Rational> rational_roots(const QPoly& p) {
    if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
    std::vector<Rational> roots;
    if (p.degree() <= 0) return roots;
    auto c = primitive_integer_coeffs(p);
    std::size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    if (low + 1 == c.size()) return roots;
    auto nums = divisors(c[low]);
    auto dens = divisors(c.back());
    for (const auto& a : nums)
        for (const auto& b : dens) {
            if (gcd(a, b) != 1) continue;
            for (int s : {1, -1}) {
                Rational r{mpz_class(a * s), b};
                if (eval_at(p, r).is_zero()) roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<PolyFactor<Rational>> irreducible_factor(const QPoly& p) {
    std::vector<PolyFactor<Rational>> out;
    for (const auto& sf : squarefree_factor(p)) {
        std::vector<QPoly> parts;
        factor_squarefree(sf.poly, parts);
        for (auto& q : parts) out.push_back({std::move(q), sf.multiplicity});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return a.poly.str() < b.poly.str();
    });
    return out;
}

bool is_irreducible(const QPoly& p) {
    if (p.degree() < 1) return false;
    auto f = irreducible_factor(p);
    return f.size() == 1 && f[0].multiplicity == 1;
}

}  // namespace k3fib
