#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include "k3fib/unipoly.hpp"

namespace k3fib {

/// Univariate rational function num/den over a field K in canonical form:
/// gcd(num, den) = 1 and den monic, so == is structural equality.
///
/// RatFunc<K> satisfies the same field interface as K, so it can itself be
/// used as the coefficient field of UniPoly and RatFunc.
template <class K>
class RatFunc {
public:
    using Poly = UniPoly<K>;

    RatFunc() : den_(K(1)) {}
    template <std::integral I>
    RatFunc(I c) : num_(K(c)), den_(K(1)) {}
    RatFunc(const K& c) : num_(c), den_(K(1)) {}
    RatFunc(Poly p) : num_(std::move(p)), den_(K(1)) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc var() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_ == den_; }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    /// Throws std::domain_error on zero.
    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return RatFunc(den_, num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        Poly g = gcd(a.den_, b.den_);
        Poly bd = b.den_ / g;
        return RatFunc(a.num_ * bd + b.num_ * (a.den_ / g), a.den_ * bd);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        // Cross-cancel first to keep intermediate degrees small.
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        RatFunc r;
        r.num_ = (a.num_ / g1) * (b.num_ / g2);
        r.den_ = (a.den_ / g2) * (b.den_ / g1);
        r.make_den_monic();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        RatFunc r;
        r.num_ = num_.pow(e);
        r.den_ = den_.pow(e);
        return r;
    }

    /// Substitutes `inner` for the variable.
    RatFunc compose(const RatFunc& inner) const {
        return num_.template eval<RatFunc>(inner) / den_.template eval<RatFunc>(inner);
    }

    K eval(const K& x) const {
        K d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole");
        return num_.eval(x) / d;
    }

    std::string str(std::string_view var = "u") const {
        if (den_.degree() == 0) return num_.str(var);
        std::string n = num_.str(var), d = den_.str(var);
        bool n_atomic = n.find_first_of("+-*/", 1) == std::string::npos;
        bool d_atomic = d.find_first_of("+-*/", 1) == std::string::npos;
        return (n_atomic ? n : "(" + n + ")") + "/" + (d_atomic ? d : "(" + d + ")");
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(K(1));
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        make_den_monic();
    }
    void make_den_monic() {
        K lc = den_.leading();
        if (!lc.is_one()) {
            K inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    Poly num_, den_;
};

}  // namespace k3fib
