#pragma once

#include <stdexcept>
#include <vector>

#include "k3fib/rational.hpp"
#include "k3fib/unipoly.hpp"

namespace k3fib {

using QPoly = UniPoly<Rational>;

template <class K>
struct PolyFactor {
    UniPoly<K> poly;
    int multiplicity = 1;
};

/// Yun's square-free decomposition over a characteristic-zero field.
///
/// Returns monic, pairwise coprime, square-free factors with their
/// multiplicities; their product equals p up to the leading coefficient.
/// A constant input yields an empty list. Throws std::domain_error on zero.
template <class K>
std::vector<PolyFactor<K>> squarefree_factor(const UniPoly<K>& p) {
    if (p.is_zero()) throw std::domain_error("square-free factorization of zero");
    std::vector<PolyFactor<K>> out;
    if (p.degree() == 0) return out;
    UniPoly<K> f = p.monic();
    UniPoly<K> df = f.derivative();
    UniPoly<K> c = gcd(f, df);
    UniPoly<K> w = f / c;
    UniPoly<K> y = df / c;
    UniPoly<K> z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        UniPoly<K> g = gcd(w, z);
        if (g.degree() > 0) out.push_back({g, i});
        w = w / g;
        y = z / g;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

/// Distinct rational roots of p, sorted ascending.
std::vector<Rational> rational_roots(const QPoly& p);

/// Factorization over Q into monic irreducible factors with multiplicities.
///
/// Square-free parts are split by rational roots, then by a factor-degree
/// sieve over small primes; degrees the sieve cannot exclude are searched
/// with Kronecker's interpolation method. Factors are ordered by degree,
/// then by their printed form. Throws std::domain_error on zero and
/// std::runtime_error if the Kronecker search exceeds its budget.
std::vector<PolyFactor<Rational>> irreducible_factor(const QPoly& p);

/// Irreducibility over Q of a non-constant polynomial.
bool is_irreducible(const QPoly& p);

/// Scales p to a primitive integer polynomial with positive leading coefficient.
std::vector<mpz_class> primitive_integer_coeffs(const QPoly& p);

}  // namespace k3fib
