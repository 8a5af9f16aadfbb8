#include "k3fib/x3field.hpp"

#include <stdexcept>

namespace k3fib {

using Poly = X3Element::Poly;
using Coeff = X3Element::Coeff;

namespace {

Poly y(int i) { return Poly::var(i); }

// y1 - 1, y1 + 1, y2 - 1, y2 + 1: the linear factors of r.
const std::array<Poly, 4>& r_factors() {
    static const std::array<Poly, 4> f = {y(0) - 1, y(0) + 1, y(1) - 1, y(1) + 1};
    return f;
}

}  // namespace

const Poly& X3Element::r() {
    static const Poly value = (y(0) * y(0) - 1) * (y(1) * y(1) - 1);
    return value;
}

X3Element X3Element::y1() { return X3Element(y(0)); }
X3Element X3Element::y2() { return X3Element(y(1)); }
X3Element X3Element::t() {
    X3Element e;
    e.n_[1] = Poly(1);
    return e;
}

X3Element X3Element::from_t_poly(const std::vector<Poly>& slots, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("X3 element with zero denominator");
    X3Element e;
    Poly rk(1);  // r^(k / 3)
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (k > 0 && k % 3 == 0) rk *= r();
        e.n_[k % 3] += slots[k] * rk;
    }
    e.add_atom(den, 1);
    e.cancel();
    return e;
}

Poly X3Element::denominator() const {
    Poly d(1);
    for (const auto& a : den_) d *= a.poly.pow(a.exp);
    return d;
}

void X3Element::add_atom(Poly p, int e) {
    if (e == 0) return;
    if (p.is_zero()) throw std::domain_error("X3 element with zero denominator");
    Coeff lc = p.make_monic();
    if (!lc.is_one()) {
        Coeff s = lc.pow(-e);
        for (auto& n : n_) n = n.scaled(s);
    }
    if (p.is_constant()) return;
    for (auto& a : den_)
        if (a.poly == p) {
            a.exp += e;
            return;
        }
    den_.push_back({std::move(p), e});
}

void X3Element::cancel() {
    if (is_zero()) {
        den_.clear();
        return;
    }
    for (auto& a : den_) {
        while (a.exp > 0) {
            std::array<Poly, 3> q;
            bool divides = true;
            for (std::size_t i = 0; i < 3 && divides; ++i) {
                if (n_[i].is_zero()) continue;
                auto [quo, rem] = divmod(n_[i], a.poly);
                if (!rem.is_zero()) divides = false;
                q[i] = std::move(quo);
            }
            if (!divides) break;
            n_ = std::move(q);
            --a.exp;
        }
    }
    std::erase_if(den_, [](const Atom& a) { return a.exp == 0; });
}

X3Element operator+(const X3Element& a, const X3Element& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    X3Element r;
    Poly ma(1), mb(1);  // multipliers bringing a and b to the common denominator
    r.den_ = a.den_;
    for (const auto& atom : b.den_) {
        bool found = false;
        for (auto& ra : r.den_) {
            if (ra.poly == atom.poly) {
                found = true;
                if (atom.exp > ra.exp) {
                    ma *= atom.poly.pow(atom.exp - ra.exp);
                    ra.exp = atom.exp;
                } else if (atom.exp < ra.exp) {
                    mb *= atom.poly.pow(ra.exp - atom.exp);
                }
            }
        }
        if (!found) {
            r.den_.push_back(atom);
            ma *= atom.poly.pow(atom.exp);
        }
    }
    for (const auto& atom : a.den_) {
        bool found = false;
        for (const auto& ba : b.den_)
            if (ba.poly == atom.poly) found = true;
        if (!found) mb *= atom.poly.pow(atom.exp);
    }
    for (std::size_t i = 0; i < 3; ++i) r.n_[i] = a.n_[i] * ma + b.n_[i] * mb;
    r.cancel();
    return r;
}

X3Element operator*(const X3Element& a, const X3Element& b) {
    if (a.is_zero() || b.is_zero()) return X3Element();
    const Poly& rr = X3Element::r();
    const auto& p = a.n_;
    const auto& q = b.n_;
    X3Element r;
    r.n_[0] = p[0] * q[0] + (p[1] * q[2] + p[2] * q[1]) * rr;
    r.n_[1] = p[0] * q[1] + p[1] * q[0] + p[2] * q[2] * rr;
    r.n_[2] = p[0] * q[2] + p[1] * q[1] + p[2] * q[0];
    r.den_ = a.den_;
    for (const auto& atom : b.den_) r.add_atom(atom.poly, atom.exp);
    r.cancel();
    return r;
}

X3Element X3Element::operator-() const {
    X3Element r = *this;
    for (auto& n : r.n_) n = -n;
    return r;
}

X3Element X3Element::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero X3 element");
    Poly d = denominator();
    X3Element r;
    const Poly &a = n_[0], &b = n_[1], &c = n_[2];
    if (is_t_free()) {
        r.n_[0] = d;
        r.add_atom(a, 1);
    } else if (a.is_zero() && c.is_zero()) {
        // (b t)^-1 = t^2 / (b r)
        r.n_[2] = d;
        r.add_atom(b, 1);
        for (const auto& f : r_factors()) r.add_atom(f, 1);
    } else if (a.is_zero() && b.is_zero()) {
        // (c t^2)^-1 = t / (c r)
        r.n_[1] = d;
        r.add_atom(c, 1);
        for (const auto& f : r_factors()) r.add_atom(f, 1);
    } else {
        // alpha * adj(alpha) = N(alpha), the norm to K(y1, y2).
        const Poly& rr = X3Element::r();
        Poly norm = a.pow(3) + b.pow(3) * rr + c.pow(3) * rr * rr - a * b * c * rr * Poly(3);
        Poly adj0 = a * a - b * c * rr;
        Poly adj1 = c * c * rr - a * b;
        Poly adj2 = b * b - a * c;
        r.n_ = {adj0 * d, adj1 * d, adj2 * d};
        r.add_atom(norm, 1);
    }
    r.cancel();
    return r;
}

X3Element X3Element::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    X3Element result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

std::string X3Element::str() const {
    if (is_zero()) return "0";
    std::string num;
    for (int k = 0; k < 3; ++k) {
        if (n_[k].is_zero()) continue;
        std::string s = n_[k].str();
        bool atomic = s.find_first_of("+-", 1) == std::string::npos;
        std::string term = k == 0 ? s : ((atomic ? (s == "1" ? "" : s + "*") : "(" + s + ")*") + (k == 1 ? "t" : "t^2"));
        if (!num.empty() && term[0] != '-') num += "+";
        num += term;
    }
    if (den_.empty()) return num;
    std::string den;
    for (const auto& a : den_) {
        if (!den.empty()) den += "*";
        den += "(" + a.poly.str() + ")";
        if (a.exp > 1) den += "^" + std::to_string(a.exp);
    }
    return "(" + num + ")/(" + den + ")";
}

X3Element x3_mul(const X3Element& a, const X3Element& b) { return a * b; }
X3Element x3_invert(const X3Element& a) { return a.inverse(); }
bool x3_is_zero(const X3Element& a) { return a.is_zero(); }

}  // namespace k3fib
