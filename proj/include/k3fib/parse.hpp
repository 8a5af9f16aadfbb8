#pragma once

#include <map>
#include <string>
#include <string_view>

#include "k3fib/ellcurve.hpp"
#include "k3fib/expr.hpp"
#include "k3fib/factor.hpp"
#include "k3fib/number_field.hpp"
#include "k3fib/x3field.hpp"

namespace k3fib {

/// Rational function of one variable over Q. Throws ParseError for syntax
/// errors or other identifiers, std::domain_error on division by zero.
QFunc parse_qfunc(std::string_view text, std::string_view var = "u");

/// Like parse_qfunc but the result must be a polynomial.
QPoly parse_qpoly(std::string_view text, std::string_view var = "u");

/// Element of the X3 function field in y1, y2, t. With a field, `a` names its
/// generator. `bindings` supplies further named elements.
X3Element parse_x3(std::string_view text, const NumberFieldPtr& field = nullptr,
                   const std::map<std::string, X3Element>& bindings = {});

/// Affine cubic f(x, y) = 0 over Q(u), e.g. "4*v^3 - u*(y+1)*(u*y^2-2*u*y+u-4)"
/// with vars {"v", "y"}, homogenized with z. `point` is an affine point.
PlaneCubic parse_plane_cubic(std::string_view text, const std::array<std::string, 2>& vars,
                             const std::array<QFunc, 2>& point, std::string_view param = "u");

/// Curve literal "a1;a2;a3;a4;a6".
WeierstrassCurve parse_curve(std::string_view text, std::string_view var = "u");

}  // namespace k3fib
