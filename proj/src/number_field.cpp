#include "k3fib/number_field.hpp"

#include <stdexcept>

#include "k3fib/factor.hpp"

namespace k3fib {

NumberFieldPtr NumberField::create(const UniPoly<Rational>& modulus, std::string generator) {
    if (modulus.degree() < 1 || !modulus.leading().is_one())
        throw std::invalid_argument("number field modulus must be monic of positive degree");
    if (modulus.degree() <= 3 && !rational_roots(modulus).empty())
        throw std::invalid_argument("number field modulus is reducible: " + modulus.str(generator));
    if (modulus.degree() > 3 && !is_irreducible(modulus))
        throw std::invalid_argument("number field modulus is reducible: " + modulus.str(generator));
    return create_trusted(modulus, std::move(generator));
}

NumberFieldPtr NumberField::create_trusted(const UniPoly<Rational>& modulus, std::string generator) {
    if (modulus.degree() < 1 || !modulus.leading().is_one())
        throw std::invalid_argument("number field modulus must be monic of positive degree");
    return NumberFieldPtr(new NumberField(modulus, std::move(generator)));
}

NumberFieldElement::NumberFieldElement(NumberFieldPtr field, const UniPoly<Rational>& poly)
    : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("null number field");
    UniPoly<Rational> r = poly % field_->modulus();
    c_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
    for (int i = 0; i <= r.degree(); ++i) c_[static_cast<std::size_t>(i)] = r.coeff(i);
}

NumberFieldElement NumberFieldElement::generator(NumberFieldPtr field) {
    return NumberFieldElement(std::move(field), UniPoly<Rational>::x());
}

Rational NumberFieldElement::coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c_.size())) ? Rational(0) : c_[static_cast<std::size_t>(i)];
}

bool NumberFieldElement::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool NumberFieldElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

bool NumberFieldElement::is_one() const { return is_rational() && c_[0].is_one(); }

Rational NumberFieldElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("number field element is not rational: " + str());
    return c_[0];
}

void NumberFieldElement::adopt(const NumberFieldElement& other) {
    if (!other.field_) return;
    if (!field_) {
        field_ = other.field_;
        c_.resize(static_cast<std::size_t>(field_->degree()), Rational(0));
        return;
    }
    if (!field_->same_as(*other.field_))
        throw std::logic_error("arithmetic between elements of different number fields");
}

NumberFieldElement& NumberFieldElement::operator+=(const NumberFieldElement& o) {
    adopt(o);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

NumberFieldElement& NumberFieldElement::operator-=(const NumberFieldElement& o) {
    adopt(o);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

NumberFieldElement& NumberFieldElement::operator*=(const NumberFieldElement& o) {
    if (o.c_.size() == 1 || o.is_rational()) {
        Rational s = o.c_[0];
        adopt(o);
        for (auto& c : c_) c *= s;
        return *this;
    }
    if (c_.size() == 1 || is_rational()) {
        Rational s = c_[0];
        *this = o;
        for (auto& c : c_) c *= s;
        return *this;
    }
    adopt(o);
    *this = NumberFieldElement(field_, as_poly() * o.as_poly());
    return *this;
}

NumberFieldElement NumberFieldElement::operator-() const {
    NumberFieldElement r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.coeff(static_cast<int>(i)) != b.coeff(static_cast<int>(i))) return false;
    return true;
}

NumberFieldElement NumberFieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero number field element");
    if (is_rational()) {
        NumberFieldElement r = *this;
        r.c_[0] = c_[0].inverse();
        return r;
    }
    // s*x + t*m = 1 in Q[g]; m is irreducible so the gcd is 1.
    auto [g, s, t] = ext_gcd(as_poly(), field_->modulus());
    if (g.degree() != 0) throw std::logic_error("number field modulus has a common factor with element");
    return NumberFieldElement(field_, s);
}

NumberFieldElement NumberFieldElement::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    NumberFieldElement result(1), base = *this;
    result.adopt(*this);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string NumberFieldElement::str() const {
    if (is_rational()) return c_[0].str();
    return as_poly().str(field_->generator());
}

}  // namespace k3fib
