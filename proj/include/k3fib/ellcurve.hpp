#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "k3fib/ratfunc.hpp"
#include "k3fib/rational.hpp"

namespace k3fib {

/// Rational functions in u over Q.
using QFunc = RatFunc<Rational>;

/// Raised when a Weierstrass model has zero discriminant.
class DegenerateCurve : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Invariants {
    QFunc b2, b4, b6, b8, c4, c6, disc, j;
};

/// Point of E(K(u)): either O or an affine pair.
struct CurvePoint {
    bool infinity = true;
    QFunc x, y;

    static CurvePoint zero() { return {}; }
    static CurvePoint affine(QFunc x, QFunc y) { return {false, std::move(x), std::move(y)}; }
    friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
        return p.infinity == q.infinity && (p.infinity || (p.x == q.x && p.y == q.y));
    }
    std::string str() const { return infinity ? "O" : "(" + x.str() + ", " + y.str() + ")"; }
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(u).
struct WeierstrassCurve {
    QFunc a1, a2, a3, a4, a6;

    static WeierstrassCurve short_form(QFunc a2, QFunc a4, QFunc a6) { return {0, std::move(a2), 0, std::move(a4), std::move(a6)}; }

    /// Δ without the nondegeneracy check.
    QFunc discriminant() const;
    /// Throws DegenerateCurve when Δ = 0.
    Invariants invariants() const;

    bool contains(const CurvePoint& p) const;
    bool is_short() const { return a1.is_zero() && a3.is_zero(); }

    std::array<QFunc, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }
    friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;

    /// "Y^2 = X^3 + (...)*X^2 + ..." in the variable u.
    std::string str() const;
};

/// Chord-tangent law on a curve with a1 = a3 = 0. Throws std::invalid_argument
/// for other shapes or when an input point is not on the curve.
CurvePoint add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint negate(const WeierstrassCurve& e, const CurvePoint& p);
CurvePoint multiply(const WeierstrassCurve& e, const CurvePoint& p, int n);

/// y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6. Requires a1 = a3 = 0 and d != 0.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, const QFunc& d);

/// Substitutes u := phi(u) and rescales x = mu^2 X, y = mu^3 Y, so the new
/// coefficients are a_i(phi) / mu^i. Throws std::invalid_argument if phi is
/// constant or mu is zero.
WeierstrassCurve base_change(const WeierstrassCurve& e, const QFunc& phi, const QFunc& mu);

/// A ternary cubic form over Q(u) in the variables (x, y, z).
class PlaneCubic {
public:
    using Monomial = std::array<int, 3>;

    PlaneCubic(std::map<Monomial, QFunc> coeffs, std::array<QFunc, 3> point);

    const std::map<Monomial, QFunc>& coeffs() const { return coeffs_; }
    const std::array<QFunc, 3>& point() const { return point_; }
    QFunc eval(const std::array<QFunc, 3>& v) const;

private:
    std::map<Monomial, QFunc> coeffs_;
    std::array<QFunc, 3> point_;
};

struct CubicConversion {
    WeierstrassCurve curve;  // a1 = a3 = 0
    bool flex = false;       // the designated point is an inflection point
    /// The Weierstrass equation was checked on the image of the generic
    /// point in the function field of the cubic.
    bool map_verified = false;
};

/// Nagell's reduction of a nonsingular plane cubic with a rational point to
/// short Weierstrass form, sending the point to O. Throws std::invalid_argument
/// if the point is not on the cubic or the cubic is singular there.
CubicConversion cubic_to_weierstrass(const PlaneCubic& c);

}  // namespace k3fib
