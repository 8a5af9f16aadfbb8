#include "k3fib/parse.hpp"

#include <vector>

#include "k3fib/mpoly.hpp"

namespace k3fib {

QFunc parse_qfunc(std::string_view text, std::string_view var) {
    ExprPtr e = parse_expr(text);
    return evaluate<QFunc>(
        *e, [](const Rational& r) { return QFunc(r); },
        [&](const std::string& name) {
            if (name != var) throw ParseError("unknown variable '" + name + "'", 0);
            return QFunc::var();
        });
}

QPoly parse_qpoly(std::string_view text, std::string_view var) {
    QFunc f = parse_qfunc(text, var);
    if (!f.is_polynomial()) throw ParseError("expected a polynomial in " + std::string(var), 0);
    return f.num().scaled(f.den().leading().inverse());
}

X3Element parse_x3(std::string_view text, const NumberFieldPtr& field,
                   const std::map<std::string, X3Element>& bindings) {
    ExprPtr e = parse_expr(text);
    return evaluate<X3Element>(
        *e, [](const Rational& r) { return X3Element(NumberFieldElement(r)); },
        [&](const std::string& name) -> X3Element {
            if (auto it = bindings.find(name); it != bindings.end()) return it->second;
            if (name == "y1") return X3Element::y1();
            if (name == "y2") return X3Element::y2();
            if (name == "t") return X3Element::t();
            if (field && name == field->generator()) return X3Element(NumberFieldElement::generator(field));
            throw ParseError("unknown variable '" + name + "'", 0);
        });
}

PlaneCubic parse_plane_cubic(std::string_view text, const std::array<std::string, 2>& vars,
                             const std::array<QFunc, 2>& point, std::string_view param) {
    using P2 = MPoly<QFunc>;
    ExprPtr e = parse_expr(text);
    P2 f = evaluate<P2>(
        *e, [](const Rational& r) { return P2(QFunc(r)); },
        [&](const std::string& name) -> P2 {
            if (name == vars[0]) return P2::var(0);
            if (name == vars[1]) return P2::var(1);
            if (name == param) return P2(QFunc::var());
            throw ParseError("unknown variable '" + name + "'", 0);
        });
    if (f.total_degree() != 3) throw ParseError("plane cubic must have total degree 3", 0);
    std::map<PlaneCubic::Monomial, QFunc> coeffs;
    for (const auto& [k, c] : f.terms()) {
        int i = static_cast<int>(P2::exp1(k)), j = static_cast<int>(P2::exp2(k));
        coeffs[{i, j, 3 - i - j}] = c;
    }
    return PlaneCubic(std::move(coeffs), {point[0], point[1], QFunc(1)});
}

WeierstrassCurve parse_curve(std::string_view text, std::string_view var) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t semi = text.find(';', start);
        parts.push_back(text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    if (parts.size() != 5) throw ParseError("curve literal needs five ';'-separated coefficients", 0);
    WeierstrassCurve e;
    QFunc* slots[5] = {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6};
    for (std::size_t i = 0; i < 5; ++i) *slots[i] = parse_qfunc(parts[i], var);
    return e;
}

}  // namespace k3fib
