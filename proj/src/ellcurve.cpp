#include "k3fib/ellcurve.hpp"

#include <utility>

namespace k3fib {

QFunc WeierstrassCurve::discriminant() const {
    QFunc b2 = a1 * a1 + QFunc(4) * a2;
    QFunc b4 = QFunc(2) * a4 + a1 * a3;
    QFunc b6 = a3 * a3 + QFunc(4) * a6;
    QFunc b8 = a1 * a1 * a6 + QFunc(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - QFunc(8) * b4.pow(3) - QFunc(27) * b6 * b6 + QFunc(9) * b2 * b4 * b6;
}

Invariants WeierstrassCurve::invariants() const {
    Invariants iv;
    iv.b2 = a1 * a1 + QFunc(4) * a2;
    iv.b4 = QFunc(2) * a4 + a1 * a3;
    iv.b6 = a3 * a3 + QFunc(4) * a6;
    iv.b8 = a1 * a1 * a6 + QFunc(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    iv.c4 = iv.b2 * iv.b2 - QFunc(24) * iv.b4;
    iv.c6 = -iv.b2.pow(3) + QFunc(36) * iv.b2 * iv.b4 - QFunc(216) * iv.b6;
    iv.disc = -iv.b2 * iv.b2 * iv.b8 - QFunc(8) * iv.b4.pow(3) - QFunc(27) * iv.b6 * iv.b6 +
              QFunc(9) * iv.b2 * iv.b4 * iv.b6;
    if (iv.disc.is_zero()) throw DegenerateCurve("Weierstrass model has zero discriminant");
    iv.j = iv.c4.pow(3) / iv.disc;
    return iv;
}

bool WeierstrassCurve::contains(const CurvePoint& p) const {
    if (p.infinity) return true;
    const QFunc &x = p.x, &y = p.y;
    return (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6).is_zero();
}

std::string WeierstrassCurve::str() const {
    auto term = [](const QFunc& c, const std::string& mono) -> std::string {
        if (c.is_zero()) return "";
        std::string s = c.str();
        bool atomic = s.find_first_of("+-/", 1) == std::string::npos;
        std::string sign = " + ";
        if (atomic && s[0] == '-') {
            sign = " - ";
            s.erase(0, 1);
        }
        if (!atomic) s = "(" + s + ")";
        if (mono.empty()) return sign + s;
        return sign + (s == "1" ? mono : s + "*" + mono);
    };
    std::string lhs = "Y^2" + term(a1, "X*Y") + term(a3, "Y");
    return lhs + " = X^3" + term(a2, "X^2") + term(a4, "X") + term(a6, "");
}

namespace {

void require_short(const WeierstrassCurve& e) {
    if (!e.is_short()) throw std::invalid_argument("group law implemented only for a1 = a3 = 0");
}

void require_on(const WeierstrassCurve& e, const CurvePoint& p) {
    if (!e.contains(p)) throw std::invalid_argument("point " + p.str() + " is not on the curve");
}

}  // namespace

CurvePoint negate(const WeierstrassCurve& e, const CurvePoint& p) {
    require_short(e);
    if (p.infinity) return p;
    return CurvePoint::affine(p.x, -p.y);
}

CurvePoint add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
    require_short(e);
    require_on(e, p);
    require_on(e, q);
    if (p.infinity) return q;
    if (q.infinity) return p;
    QFunc lambda;
    if (p.x == q.x) {
        if ((p.y + q.y).is_zero()) return CurvePoint::zero();
        lambda = (QFunc(3) * p.x * p.x + QFunc(2) * e.a2 * p.x + e.a4) / (QFunc(2) * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    QFunc x3 = lambda * lambda - e.a2 - p.x - q.x;
    QFunc y3 = -(lambda * (x3 - p.x) + p.y);
    return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint multiply(const WeierstrassCurve& e, const CurvePoint& p, int n) {
    if (n < 0) return multiply(e, negate(e, p), -n);
    require_short(e);
    require_on(e, p);
    CurvePoint acc = CurvePoint::zero();
    for (int i = 0; i < n; ++i) acc = add(e, acc, p);
    return acc;
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, const QFunc& d) {
    require_short(e);
    if (d.is_zero()) throw std::invalid_argument("quadratic twist by zero");
    return WeierstrassCurve::short_form(d * e.a2, d * d * e.a4, d.pow(3) * e.a6);
}

WeierstrassCurve base_change(const WeierstrassCurve& e, const QFunc& phi, const QFunc& mu) {
    if (phi.is_constant()) throw std::invalid_argument("base change by a constant substitution");
    if (mu.is_zero()) throw std::invalid_argument("base change with zero rescaling");
    auto tr = [&](const QFunc& a, int w) { return a.compose(phi) / mu.pow(w); };
    return {tr(e.a1, 1), tr(e.a2, 2), tr(e.a3, 3), tr(e.a4, 4), tr(e.a6, 6)};
}

// ---------------------------------------------------------------------------
// Plane cubics

PlaneCubic::PlaneCubic(std::map<Monomial, QFunc> coeffs, std::array<QFunc, 3> point)
    : point_(std::move(point)) {
    for (auto& [m, c] : coeffs) {
        if (m[0] < 0 || m[1] < 0 || m[2] < 0 || m[0] + m[1] + m[2] != 3)
            throw std::invalid_argument("plane cubic monomial is not of degree 3");
        if (!c.is_zero()) coeffs_.emplace(m, std::move(c));
    }
    if (point_[0].is_zero() && point_[1].is_zero() && point_[2].is_zero())
        throw std::invalid_argument("designated point has all coordinates zero");
}

QFunc PlaneCubic::eval(const std::array<QFunc, 3>& v) const {
    QFunc s;
    for (const auto& [m, c] : coeffs_) s += c * v[0].pow(m[0]) * v[1].pow(m[1]) * v[2].pow(m[2]);
    return s;
}

namespace {

using Monomial = PlaneCubic::Monomial;
using Form = std::map<Monomial, QFunc>;

void add_to(Form& f, const Monomial& m, const QFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = f.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

Form mul(const Form& a, const Form& b) {
    Form r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) add_to(r, {ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
    return r;
}

Form linear(const QFunc& cx, const QFunc& cy, const QFunc& cz) {
    Form f;
    add_to(f, {1, 0, 0}, cx);
    add_to(f, {0, 1, 0}, cy);
    add_to(f, {0, 0, 1}, cz);
    return f;
}

// F(L0, L1, L2) for linear forms L.
Form substitute(const Form& f, const std::array<Form, 3>& l) {
    Form r;
    for (const auto& [m, c] : f) {
        Form term;
        term[{0, 0, 0}] = c;
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < m[static_cast<std::size_t>(v)]; ++k) term = mul(term, l[static_cast<std::size_t>(v)]);
        for (const auto& [mt, ct] : term) add_to(r, mt, ct);
    }
    return r;
}

QFunc coeff(const Form& f, const Monomial& m) {
    auto it = f.find(m);
    return it == f.end() ? QFunc() : it->second;
}

// Functions on the cubic: a + b w with a, b in Q(u)(m) and w^2 = q(m).
using MFunc = RatFunc<QFunc>;
using MPolyU = UniPoly<QFunc>;

struct QuadElt {
    MFunc a, b;
};

QuadElt operator+(const QuadElt& x, const QuadElt& y) { return {x.a + y.a, x.b + y.b}; }
QuadElt operator-(const QuadElt& x, const QuadElt& y) { return {x.a - y.a, x.b - y.b}; }
QuadElt mul(const QuadElt& x, const QuadElt& y, const MFunc& q) {
    return {x.a * y.a + x.b * y.b * q, x.a * y.b + x.b * y.a};
}

bool satisfies(const WeierstrassCurve& e, const QuadElt& x, const QuadElt& y, const MFunc& q) {
    auto c = [](const QFunc& v) { return QuadElt{MFunc(v), MFunc()}; };
    QuadElt lhs = mul(y, y, q) + mul(mul(c(e.a1), x, q), y, q) + mul(c(e.a3), y, q);
    QuadElt x2 = mul(x, x, q);
    QuadElt rhs = mul(x2, x, q) + mul(c(e.a2), x2, q) + mul(c(e.a4), x, q) + c(e.a6);
    QuadElt d = lhs - rhs;
    return d.a.is_zero() && d.b.is_zero();
}

}  // namespace

CubicConversion cubic_to_weierstrass(const PlaneCubic& c) {
    const auto& p = c.point();
    if (!c.eval(p).is_zero()) throw std::invalid_argument("designated point is not on the cubic");

    // Move the point to (0:0:1): old coordinates = M * new, third column of M = P.
    std::size_t k = !p[2].is_zero() ? 2 : (!p[1].is_zero() ? 1 : 0);
    std::array<std::size_t, 2> others{};
    for (std::size_t i = 0, n = 0; i < 3; ++i)
        if (i != k) others[n++] = i;
    std::array<Form, 3> l;
    for (std::size_t r = 0; r < 3; ++r)
        l[r] = linear(r == others[0] ? QFunc(1) : QFunc(), r == others[1] ? QFunc(1) : QFunc(), p[r]);
    Form g = substitute(c.coeffs(), l);

    // Rotate so the tangent line at the origin is y = 0.
    QFunc alpha = coeff(g, {1, 0, 2}), beta = coeff(g, {0, 1, 2});
    QFunc tangent;
    if (!beta.is_zero()) {
        g = substitute(g, {linear(1, 0, 0), linear(-alpha / beta, QFunc(1) / beta, 0), linear(0, 0, 1)});
        tangent = 1;
    } else if (!alpha.is_zero()) {
        g = substitute(g, {linear(0, 1, 0), linear(1, 0, 0), linear(0, 0, 1)});
        tangent = alpha;
    } else {
        throw std::invalid_argument("cubic is singular at the designated point");
    }

    // Lines y = m x through the origin meet the cubic again where
    // f3(1,m) x^2 + f2(1,m) x + f1(1,m) = 0; w = 2 f3 x + f2 satisfies w^2 = q(m).
    MPolyU f1(std::vector<QFunc>{QFunc(), tangent});
    MPolyU f2(std::vector<QFunc>{coeff(g, {2, 0, 1}), coeff(g, {1, 1, 1}), coeff(g, {0, 2, 1})});
    MPolyU f3(std::vector<QFunc>{coeff(g, {3, 0, 0}), coeff(g, {2, 1, 0}), coeff(g, {1, 2, 0}), coeff(g, {0, 3, 0})});
    MPolyU q = f2 * f2 - f1 * f3 * MPolyU(QFunc(4));
    QFunc A = q.coeff(4), B = q.coeff(3), C = q.coeff(2), D = q.coeff(1), E = f2.coeff(0);

    MFunc m = MFunc::var(), qm(q);

    CubicConversion out;
    WeierstrassCurve longform;
    QuadElt X, Y;
    if (!E.is_zero()) {
        // Quartic w^2 = A m^4 + B m^3 + C m^2 + D m + E^2 with the point (0, E).
        QFunc a1 = D / E, a2 = C - D * D / (QFunc(4) * E * E), a3 = QFunc(2) * E * B, a4 = -QFunc(4) * E * E * A;
        longform = {a1, a2, a3, a4, a2 * a4};
        MFunc m2 = m * m, m3 = m2 * m;
        X = QuadElt{(MFunc(QFunc(2) * E * E) + MFunc(D) * m) / m2, MFunc(QFunc(2) * E) / m2};
        MFunc ya = MFunc(QFunc(4) * E * E * E) + MFunc(QFunc(2) * E) * (MFunc(D) * m + MFunc(C) * m2) -
                   MFunc(D * D / (QFunc(2) * E)) * m2;
        Y = QuadElt{ya / m3, MFunc(QFunc(4) * E * E) / m3};
    } else {
        // Flex: q = m g(m); n = 1/m gives (w n^2)^2 = D n^3 + C n^2 + B n + A.
        if (D.is_zero()) throw std::invalid_argument("cubic is singular (degenerate tangent quartic)");
        out.flex = true;
        longform = WeierstrassCurve::short_form(C, B * D, A * D * D);
        X = QuadElt{MFunc(D) / m, MFunc()};
        Y = QuadElt{MFunc(), MFunc(D) / (m * m)};
    }
    out.map_verified = satisfies(longform, X, Y, qm);

    // Complete the square: y -> y - (a1 x + a3)/2.
    const auto& e = longform;
    out.curve = WeierstrassCurve::short_form(e.a2 + e.a1 * e.a1 / QFunc(4), e.a4 + e.a1 * e.a3 / QFunc(2),
                                             e.a6 + e.a3 * e.a3 / QFunc(4));
    if (out.curve.discriminant().is_zero()) throw std::invalid_argument("cubic is singular");
    return out;
}

}  // namespace k3fib
