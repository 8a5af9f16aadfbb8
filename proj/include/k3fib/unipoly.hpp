#pragma once

#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace k3fib {

namespace detail {

/// Formats a coefficient for use in a product "c*var^k". Strips a leading
/// minus sign into `negative` when the remainder is a single atom.
template <class K>
std::string coeff_atom(const K& c, bool& negative) {
    std::string s = c.str();
    negative = false;
    std::string_view body = s;
    if (!body.empty() && body[0] == '-') body.remove_prefix(1);
    bool atomic = body.find_first_of("+-") == std::string_view::npos;
    if (atomic) {
        negative = s[0] == '-';
        return std::string(body);
    }
    return "(" + s + ")";
}

}  // namespace detail

/// Dense univariate polynomial over a field K, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and has degree -1.
template <class K>
class UniPoly {
public:
    static constexpr int kZeroDegree = -1;

    UniPoly() = default;
    UniPoly(const K& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    template <std::integral I>
    UniPoly(I c) : UniPoly(K(c)) {}
    explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly monomial(const K& c, int deg) {
        if (c.is_zero()) return {};
        std::vector<K> v(static_cast<std::size_t>(deg) + 1, K(0));
        v.back() = c;
        return UniPoly(std::move(v));
    }
    static UniPoly x() { return monomial(K(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    K coeff(int i) const {
        return (i < 0 || i >= static_cast<int>(c_.size())) ? K(0) : c_[static_cast<std::size_t>(i)];
    }
    const std::vector<K>& coeffs() const { return c_; }
    K leading() const { return c_.empty() ? K(0) : c_.back(); }
    K constant_term() const { return coeff(0); }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(v));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    UniPoly scaled(const K& s) const {
        if (s.is_zero()) return {};
        UniPoly r = *this;
        for (auto& c : r.c_) c *= s;
        r.trim();
        return r;
    }

    /// Euclidean division: returns (q, r) with a = q*b + r and deg r < deg b.
    /// Throws std::domain_error when b is zero.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {UniPoly(), a};
        std::vector<K> rem = a.c_;
        std::vector<K> quo(a.c_.size() - b.c_.size() + 1, K(0));
        K inv_lead = b.leading().inverse();
        int db = b.degree();
        for (int k = a.degree(); k >= db; --k) {
            const K& top = rem[static_cast<std::size_t>(k)];
            if (top.is_zero()) continue;
            K f = top * inv_lead;
            quo[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        rem.resize(static_cast<std::size_t>(db));
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

    /// Exact quotient; throws std::domain_error if b does not divide a.
    UniPoly exact_div(const UniPoly& b) const {
        auto [q, r] = divmod(*this, b);
        if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
        return q;
    }
    bool divisible_by(const UniPoly& b) const { return (*this % b).is_zero(); }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    UniPoly monic() const {
        if (is_zero()) return {};
        return scaled(leading().inverse());
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> v;
        v.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * K(static_cast<long>(i)));
        return UniPoly(std::move(v));
    }

    /// Horner evaluation in any ring T that accepts K coefficients.
    template <class T = K>
    T eval(const T& x) const {
        T acc = T(K(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    UniPoly compose(const UniPoly& inner) const { return eval<UniPoly>(inner); }

    UniPoly pow(int e) const {
        if (e < 0) throw std::domain_error("negative polynomial power");
        UniPoly result(K(1)), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Human-readable form, highest degree first: "-2*u^4+4*u".
    std::string str(std::string_view var = "u") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const K& c = c_[static_cast<std::size_t>(k)];
            if (c.is_zero()) continue;
            bool neg = false;
            std::string atom = detail::coeff_atom(c, neg);
            if (neg)
                out += "-";
            else if (!out.empty())
                out += "+";
            std::string mono;
            if (k == 1)
                mono = std::string(var);
            else if (k > 1)
                mono = std::string(var) + "^" + std::to_string(k);
            if (mono.empty())
                out += atom;
            else if (atom == "1")
                out += mono;
            else
                out += atom + "*" + mono;
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

/// Monic gcd (zero if both inputs are zero).
template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.is_zero()) {
        UniPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

class Rational;

/// Monic gcd over Q: a modular coprimality test, then primitive remainder
/// sequences over Z. Preferred over the generic Euclid for Rational.
UniPoly<Rational> gcd(const UniPoly<Rational>& a, const UniPoly<Rational>& b);

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<UniPoly<K>, UniPoly<K>, UniPoly<K>> ext_gcd(const UniPoly<K>& a, const UniPoly<K>& b) {
    UniPoly<K> r0 = a, r1 = b, s0(K(1)), s1, t0, t1(K(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly<K> s2 = s0 - q * s1;
        UniPoly<K> t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    K inv = r0.leading().inverse();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

}  // namespace k3fib
