#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>

namespace k3fib {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. The wrapper exists so that generic
/// polynomial code never sees GMP expression templates.
class Rational {
public:
    Rational() = default;
    template <std::integral I>
    Rational(I v) : q_(static_cast<long>(v)) {}
    Rational(long num, long den);
    explicit Rational(mpz_class num, mpz_class den = 1);
    explicit Rational(mpq_class q);

    /// Parses "7", "-3/2" or "  12 ". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& mpq() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// Throws std::domain_error on zero.
    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational pow(int e) const;

    /// "3/2", "-4", "0".
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

}  // namespace k3fib
