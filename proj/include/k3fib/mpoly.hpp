#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "k3fib/unipoly.hpp"

namespace k3fib {

/// Sparse polynomial in two variables over a field K.
///
/// Monomials y1^i y2^j are keyed by (i << 32) | j, so the map order is
/// lexicographic with y1 > y2. Zero coefficients are never stored.
template <class K>
class MPoly {
public:
    using Key = std::uint64_t;
    static constexpr Key key(std::uint32_t i, std::uint32_t j) { return (Key(i) << 32) | j; }
    static constexpr std::uint32_t exp1(Key k) { return static_cast<std::uint32_t>(k >> 32); }
    static constexpr std::uint32_t exp2(Key k) { return static_cast<std::uint32_t>(k & 0xffffffffu); }

    MPoly() = default;
    MPoly(const K& c) {
        if (!c.is_zero()) terms_.emplace(0, c);
    }
    template <std::integral I>
    MPoly(I c) : MPoly(K(c)) {}

    /// The variable y1 (index 0) or y2 (index 1).
    static MPoly var(int index) {
        MPoly p;
        p.terms_.emplace(index == 0 ? key(1, 0) : key(0, 1), K(1));
        return p;
    }
    static MPoly monomial(const K& c, std::uint32_t i, std::uint32_t j) {
        MPoly p;
        if (!c.is_zero()) p.terms_.emplace(key(i, j), c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, K>& terms() const { return terms_; }
    K constant_term() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? K(0) : it->second;
    }
    /// Leading term in lex order (y1 > y2). Undefined on zero.
    const std::pair<const Key, K>& leading() const { return *terms_.rbegin(); }
    int total_degree() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max<int>(d, static_cast<int>(exp1(k) + exp2(k)));
        return d;
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const K& s) const {
        if (s.is_zero()) return {};
        MPoly r = *this;
        for (auto& [k, c] : r.terms_) c *= s;
        return r;
    }

    /// Division by a nonzero constant; any other divisor throws std::domain_error.
    friend MPoly operator/(const MPoly& a, const MPoly& b) {
        if (!b.is_constant() || b.is_zero())
            throw std::domain_error("polynomial division by a non-constant bivariate polynomial");
        return a.scaled(b.constant_term().inverse());
    }

    MPoly pow(int e) const {
        if (e < 0) throw std::domain_error("negative polynomial power");
        MPoly result(K(1)), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    /// Division with remainder by a single nonzero divisor in lex order.
    /// The remainder is zero exactly when b divides a.
    friend std::pair<MPoly, MPoly> divmod(const MPoly& a, const MPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        MPoly q, r, p = a;
        const auto& [lk, lc] = b.leading();
        K inv = lc.inverse();
        while (!p.is_zero()) {
            auto [pk, pc] = *p.terms_.rbegin();
            if (exp1(pk) >= exp1(lk) && exp2(pk) >= exp2(lk)) {
                MPoly t = monomial(pc * inv, exp1(pk) - exp1(lk), exp2(pk) - exp2(lk));
                q += t;
                p -= t * b;
            } else {
                r.add_term(pk, pc);
                p.terms_.erase(pk);
            }
        }
        return {q, r};
    }
    bool divisible_by(const MPoly& b) const { return divmod(*this, b).second.is_zero(); }

    /// Scales so the lex-leading coefficient is one; returns the factor removed.
    K make_monic() {
        if (is_zero()) return K(1);
        K lc = terms_.rbegin()->second;
        if (!lc.is_one()) {
            K inv = lc.inverse();
            for (auto& [k, c] : terms_) c *= inv;
        }
        return lc;
    }

    /// True when the polynomial does not involve y2 (resp. y1) and can be
    /// viewed as univariate.
    bool only_in(int index) const {
        for (const auto& [k, c] : terms_)
            if ((index == 0 ? exp2(k) : exp1(k)) != 0) return false;
        return true;
    }

    template <class T>
    T eval(const T& y1, const T& y2) const {
        T acc = T(K(0));
        for (const auto& [k, c] : terms_) {
            T term = T(c);
            for (std::uint32_t i = 0; i < exp1(k); ++i) term = term * y1;
            for (std::uint32_t j = 0; j < exp2(k); ++j) term = term * y2;
            acc = acc + term;
        }
        return acc;
    }

    std::string str(const std::array<std::string, 2>& vars = {"y1", "y2"}) const {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            bool neg = false;
            std::string atom = detail::coeff_atom(it->second, neg);
            out += neg ? "-" : (out.empty() ? "" : "+");
            std::string mono;
            auto pw = [&](const std::string& v, std::uint32_t e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += v;
                if (e > 1) mono += "^" + std::to_string(e);
            };
            pw(vars[0], exp1(it->first));
            pw(vars[1], exp2(it->first));
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
    void add_term(Key k, const K& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    std::map<Key, K> terms_;
};

}  // namespace k3fib
