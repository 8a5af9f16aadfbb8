#pragma once

#include <concepts>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "k3fib/rational.hpp"
#include "k3fib/unipoly.hpp"

namespace k3fib {

/// A simple algebraic extension Q[g]/(m(g)) with m monic and irreducible.
///
/// Residue fields Q[u]/(p) of places are built from the same type, so a
/// context may have any degree; `create` verifies irreducibility for degree
/// <= 3, `create_trusted` is for moduli that are irreducible by construction.
class NumberField {
public:
    /// Throws std::invalid_argument if m is not monic or (for deg <= 3) reducible.
    static std::shared_ptr<const NumberField> create(const UniPoly<Rational>& modulus,
                                                     std::string generator = "a");
    static std::shared_ptr<const NumberField> create_trusted(const UniPoly<Rational>& modulus,
                                                             std::string generator = "a");

    int degree() const { return modulus_.degree(); }
    const UniPoly<Rational>& modulus() const { return modulus_; }
    const std::string& generator() const { return generator_; }

    bool same_as(const NumberField& other) const {
        return this == &other || modulus_ == other.modulus_;
    }

private:
    NumberField(UniPoly<Rational> m, std::string g) : modulus_(std::move(m)), generator_(std::move(g)) {}
    UniPoly<Rational> modulus_;
    std::string generator_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q or of a NumberField.
///
/// An element without a field is a plain rational; mixing it with an element
/// of a field promotes it. Mixing two different fields throws std::logic_error.
/// When a field is attached, the coefficient vector has exactly deg(m) entries.
class NumberFieldElement {
public:
    NumberFieldElement() : c_{Rational(0)} {}
    template <std::integral I>
    NumberFieldElement(I v) : c_{Rational(v)} {}
    NumberFieldElement(Rational r) : c_{std::move(r)} {}
    NumberFieldElement(NumberFieldPtr field, const UniPoly<Rational>& poly);

    /// The generator of `field`.
    static NumberFieldElement generator(NumberFieldPtr field);

    const NumberFieldPtr& field() const { return field_; }
    /// Coefficient of g^i (i < degree).
    Rational coeff(int i) const;
    UniPoly<Rational> as_poly() const { return UniPoly<Rational>(c_); }

    bool is_zero() const;
    bool is_one() const;
    /// True when the element lies in Q (all higher coefficients vanish).
    bool is_rational() const;
    Rational rational_value() const;  // throws std::domain_error unless is_rational()

    /// Throws std::domain_error on zero.
    NumberFieldElement inverse() const;

    NumberFieldElement& operator+=(const NumberFieldElement& o);
    NumberFieldElement& operator-=(const NumberFieldElement& o);
    NumberFieldElement& operator*=(const NumberFieldElement& o);
    NumberFieldElement& operator/=(const NumberFieldElement& o) { return *this *= o.inverse(); }
    friend NumberFieldElement operator+(NumberFieldElement a, const NumberFieldElement& b) { return a += b; }
    friend NumberFieldElement operator-(NumberFieldElement a, const NumberFieldElement& b) { return a -= b; }
    friend NumberFieldElement operator*(NumberFieldElement a, const NumberFieldElement& b) { return a *= b; }
    friend NumberFieldElement operator/(NumberFieldElement a, const NumberFieldElement& b) { return a /= b; }
    NumberFieldElement operator-() const;

    friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b);

    NumberFieldElement pow(int e) const;

    /// "3/2", "a^2/4", "a^2-a+1".
    std::string str() const;

private:
    void adopt(const NumberFieldElement& other);
    NumberFieldPtr field_;
    std::vector<Rational> c_;
};

}  // namespace k3fib
