#pragma once

#include <array>
#include <concepts>
#include <string>
#include <vector>

#include "k3fib/mpoly.hpp"
#include "k3fib/number_field.hpp"

namespace k3fib {

/// Element of the function field K(y1, y2)[t] / (t^3 - (y1^2-1)(y2^2-1)).
///
/// Stored as (n0 + n1 t + n2 t^2) / D where the n_i are polynomials in
/// (y1, y2) and D is a product of monic polynomial atoms with positive
/// exponents. The t-degree never exceeds 2. K is Q or a number field.
class X3Element {
public:
    using Coeff = NumberFieldElement;
    using Poly = MPoly<Coeff>;
    struct Atom {
        Poly poly;  // non-constant, lex-leading coefficient 1
        int exp = 1;
    };

    X3Element() = default;
    X3Element(const Coeff& c) : n_{Poly(c), Poly(), Poly()} {}
    template <std::integral I>
    X3Element(I c) : X3Element(Coeff(c)) {}
    X3Element(const Poly& p) : n_{p, Poly(), Poly()} {}

    static X3Element y1();
    static X3Element y2();
    static X3Element t();
    /// r = (y1^2-1)(y2^2-1), the value of t^3.
    static const Poly& r();

    /// (sum_k slots[k] t^k) / den with arbitrary t-degree, reduced by t^3 = r.
    static X3Element from_t_poly(const std::vector<Poly>& slots, const Poly& den = Poly(1));

    const Poly& numerator(int slot) const { return n_[static_cast<std::size_t>(slot)]; }
    const std::vector<Atom>& denominator_atoms() const { return den_; }
    Poly denominator() const;

    bool is_zero() const { return n_[0].is_zero() && n_[1].is_zero() && n_[2].is_zero(); }
    bool is_t_free() const { return n_[1].is_zero() && n_[2].is_zero(); }

    /// Throws std::domain_error on zero.
    X3Element inverse() const;
    X3Element pow(int e) const;

    X3Element& operator+=(const X3Element& o) { return *this = *this + o; }
    X3Element& operator-=(const X3Element& o) { return *this = *this - o; }
    X3Element& operator*=(const X3Element& o) { return *this = *this * o; }
    X3Element& operator/=(const X3Element& o) { return *this = *this / o; }
    friend X3Element operator+(const X3Element& a, const X3Element& b);
    friend X3Element operator-(const X3Element& a, const X3Element& b) { return a + (-b); }
    friend X3Element operator*(const X3Element& a, const X3Element& b);
    friend X3Element operator/(const X3Element& a, const X3Element& b) { return a * b.inverse(); }
    X3Element operator-() const;

    /// Equality in the field (the difference is zero).
    friend bool operator==(const X3Element& a, const X3Element& b) { return (a - b).is_zero(); }

    std::string str() const;

private:
    void add_atom(Poly p, int e);
    void cancel();
    std::array<Poly, 3> n_;
    std::vector<Atom> den_;
};

X3Element x3_mul(const X3Element& a, const X3Element& b);
X3Element x3_invert(const X3Element& a);
bool x3_is_zero(const X3Element& a);

}  // namespace k3fib
