#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "k3fib/rational.hpp"

namespace k3fib {

/// Thrown for malformed expression text; `position` is a byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Syntax tree of an arithmetic expression over rational constants and
/// named variables: + - * / unary minus and integer powers.
struct Expr {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Number;
    Rational value;           // Number
    std::string name;         // Variable
    int exponent = 0;         // Pow
    std::vector<std::shared_ptr<const Expr>> args;

    /// Variable names in first-occurrence order.
    std::vector<std::string> variables() const;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parses e.g. "2*(y2+1)/(y1-1)^2" or "u^5*(u-1)^2". Identifiers are
/// [A-Za-z][A-Za-z0-9_']*; powers take (possibly negative) integer literals.
/// Multiplication must be explicit. Throws ParseError.
ExprPtr parse_expr(std::string_view text);

/// Folds the tree into T. `num(Rational)` builds constants and `var(name)`
/// resolves identifiers (it may throw for unknown names).
template <class T, class NumFn, class VarFn>
T evaluate(const Expr& e, const NumFn& num, const VarFn& var) {
    auto sub = [&](std::size_t i) { return evaluate<T>(*e.args[i], num, var); };
    switch (e.kind) {
        case Expr::Kind::Number: return num(e.value);
        case Expr::Kind::Variable: return var(e.name);
        case Expr::Kind::Add: return sub(0) + sub(1);
        case Expr::Kind::Sub: return sub(0) - sub(1);
        case Expr::Kind::Mul: return sub(0) * sub(1);
        case Expr::Kind::Div: return sub(0) / sub(1);
        case Expr::Kind::Neg: return -sub(0);
        case Expr::Kind::Pow: return sub(0).pow(e.exponent);
    }
    throw std::logic_error("unknown expression node");
}

}  // namespace k3fib
