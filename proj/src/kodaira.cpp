#include "k3fib/kodaira.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "k3fib/number_field.hpp"

namespace k3fib {

// ---------------------------------------------------------------------------
// Places and valuations

Place Place::finite(const QPoly& p) {
    if (p.degree() < 1 || !p.leading().is_one()) throw std::invalid_argument("place polynomial must be monic");
    if (!is_irreducible(p)) throw std::invalid_argument("place polynomial is reducible: " + p.str());
    Place v;
    v.infinity_ = false;
    v.p_ = p;
    return v;
}

bool operator<(const Place& a, const Place& b) {
    if (a.infinity_ != b.infinity_) return b.infinity_;
    if (a.infinity_) return false;
    if (a.p_.degree() != b.p_.degree()) return a.p_.degree() < b.p_.degree();
    return a.p_.str() < b.p_.str();
}

namespace {

int poly_ord(QPoly f, const QPoly& p) {
    int k = 0;
    for (;;) {
        auto [q, r] = divmod(f, p);
        if (!r.is_zero()) return k;
        f = std::move(q);
        ++k;
    }
}

}  // namespace

int ord_at(const QFunc& f, const Place& v) {
    if (f.is_zero()) throw std::domain_error("valuation of zero");
    if (v.is_infinity()) return f.den().degree() - f.num().degree();
    return poly_ord(f.num(), v.poly()) - poly_ord(f.den(), v.poly());
}

// ---------------------------------------------------------------------------
// Kodaira types

KodairaType KodairaType::parse(std::string_view s) {
    using F = Family;
    if (s == "II") return {F::II};
    if (s == "III") return {F::III};
    if (s == "IV") return {F::IV};
    if (s == "II*") return {F::IIStar};
    if (s == "III*") return {F::IIIStar};
    if (s == "IV*") return {F::IVStar};
    if (s.size() >= 2 && s[0] == 'I') {
        bool star = s.back() == '*';
        std::string_view digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
            digits.size() < 6) {
            int n = std::stoi(std::string(digits));
            return {star ? F::IStar : F::I, n};
        }
    }
    throw std::invalid_argument("unknown Kodaira symbol '" + std::string(s) + "'");
}

int KodairaType::components() const {
    switch (family_) {
        case Family::I: return n_ == 0 ? 1 : n_;
        case Family::IStar: return n_ + 5;
        case Family::II: return 1;
        case Family::III: return 2;
        case Family::IV: return 3;
        case Family::IVStar: return 7;
        case Family::IIIStar: return 8;
        case Family::IIStar: return 9;
    }
    return 0;
}

int KodairaType::euler() const {
    switch (family_) {
        case Family::I: return n_;
        case Family::IStar: return n_ + 6;
        case Family::II: return 2;
        case Family::III: return 3;
        case Family::IV: return 4;
        case Family::IVStar: return 8;
        case Family::IIIStar: return 9;
        case Family::IIStar: return 10;
    }
    return 0;
}

int KodairaType::root_discriminant() const {
    switch (family_) {
        case Family::I: return n_ == 0 ? 1 : n_;
        case Family::IStar: return 4;
        case Family::II:
        case Family::IIStar: return 1;
        case Family::III:
        case Family::IIIStar: return 2;
        case Family::IV:
        case Family::IVStar: return 3;
    }
    return 0;
}

std::vector<int> KodairaType::component_group() const {
    switch (family_) {
        case Family::I: return n_ <= 1 ? std::vector<int>{} : std::vector<int>{n_};
        case Family::IStar: return n_ % 2 == 0 ? std::vector<int>{2, 2} : std::vector<int>{4};
        case Family::II:
        case Family::IIStar: return {};
        case Family::III:
        case Family::IIIStar: return {2};
        case Family::IV:
        case Family::IVStar: return {3};
    }
    return {};
}

std::string KodairaType::str() const {
    switch (family_) {
        case Family::I: return "I" + std::to_string(n_);
        case Family::IStar: return "I" + std::to_string(n_) + "*";
        case Family::II: return "II";
        case Family::III: return "III";
        case Family::IV: return "IV";
        case Family::IVStar: return "IV*";
        case Family::IIIStar: return "III*";
        case Family::IIStar: return "II*";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Local models

CurvePoint LocalModel::to_local(const CurvePoint& p) const {
    if (p.infinity) return p;
    QFunc x = p.x, y = p.y;
    if (infinity_weight != 0) {
        QFunc inv = QFunc(1) / QFunc::var();
        QFunc zk = QFunc::var().pow(infinity_weight);
        x = x.compose(inv) * zk.pow(2);
        y = y.compose(inv) * zk.pow(3);
    }
    QFunc xl = (x - R) / (U * U);
    QFunc yl = (y - S * U * U * xl - T) / U.pow(3);
    return CurvePoint::affine(std::move(xl), std::move(yl));
}

namespace {

using F = KodairaType::Family;
using KElt = NumberFieldElement;
using KPoly = UniPoly<KElt>;

// Residue field Q[z]/(p) with reduction and lifting of local integers.
class Residue {
public:
    explicit Residue(const QPoly& p) : p_(p), k_(NumberField::create_trusted(p, "z")), place_(Place::finite(p)) {}

    int val(const QFunc& f) const { return f.is_zero() ? kInfiniteOrder : ord_at(f, place_); }
    KElt reduce(const QFunc& f) const {
        if (val(f) < 0) throw std::logic_error("reduction of a non-integral function");
        return KElt(k_, f.num()) / KElt(k_, f.den());
    }
    QFunc lift(const KElt& a) const { return QFunc(a.as_poly()); }
    bool divides(const QFunc& f) const { return val(f) >= 1; }
    const QPoly& p() const { return p_; }

private:
    QPoly p_;
    NumberFieldPtr k_;
    Place place_;
};

// Applies x = x' + r, y = y' + s x' + t and records it in the total transform.
void rst(LocalModel& m, const QFunc& r, const QFunc& s, const QFunc& t) {
    auto& e = m.minimal;
    QFunc a1 = e.a1, a2 = e.a2, a3 = e.a3, a4 = e.a4, a6 = e.a6;
    e.a1 = a1 + QFunc(2) * s;
    e.a2 = a2 - s * a1 + QFunc(3) * r - s * s;
    e.a3 = a3 + r * a1 + QFunc(2) * t;
    e.a4 = a4 - s * a3 + QFunc(2) * r * a2 - (t + r * s) * a1 + QFunc(3) * r * r - QFunc(2) * s * t;
    e.a6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    QFunc u2 = m.U * m.U;
    m.T = m.T + u2 * m.U * t + m.S * u2 * r;
    m.R = m.R + u2 * r;
    m.S = m.S + m.U * s;
}

// x = w^2 x', y = w^3 y'.
void scale(LocalModel& m, const QFunc& w) {
    auto& e = m.minimal;
    e.a1 = e.a1 / w;
    e.a2 = e.a2 / w.pow(2);
    e.a3 = e.a3 / w.pow(3);
    e.a4 = e.a4 / w.pow(4);
    e.a6 = e.a6 / w.pow(6);
    m.U = m.U * w;
}

// The b-invariants and discriminant, without c4, c6 and j.
struct LocalInvariants {
    QFunc b2, b4, b6, b8, disc;
};

LocalInvariants local_invariants(const WeierstrassCurve& e) {
    LocalInvariants iv;
    iv.b2 = e.a1 * e.a1 + QFunc(4) * e.a2;
    iv.b4 = QFunc(2) * e.a4 + e.a1 * e.a3;
    iv.b6 = e.a3 * e.a3 + QFunc(4) * e.a6;
    iv.b8 = e.a1 * e.a1 * e.a6 + QFunc(4) * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 - e.a4 * e.a4;
    iv.disc = -iv.b2 * iv.b2 * iv.b8 - QFunc(8) * iv.b4.pow(3) - QFunc(27) * iv.b6 * iv.b6 +
              QFunc(9) * iv.b2 * iv.b4 * iv.b6;
    return iv;
}

KodairaType tate_local(LocalModel& m, const Residue& k) {
    const QFunc pi(k.p());
    auto& e = m.minimal;

    // Make the model integral.
    int need = 0;
    const std::pair<const QFunc*, int> weighted[] = {{&e.a1, 1}, {&e.a2, 2}, {&e.a3, 3}, {&e.a4, 4}, {&e.a6, 6}};
    for (auto [a, w] : weighted) {
        int v = k.val(*a);
        if (v < 0) need = std::max(need, (-v + w - 1) / w);
    }
    if (need > 0) scale(m, pi.pow(-need));

    for (int guard = 0; guard < 64; ++guard) {
        LocalInvariants iv = local_invariants(e);
        if (k.val(iv.disc) == 0) return {F::I, 0};

        // Move the singular point of the reduction to (0, 0).
        KElt b2 = k.reduce(iv.b2), b4 = k.reduce(iv.b4), b6 = k.reduce(iv.b6);
        KPoly cubic(std::vector<KElt>{b6, KElt(2) * b4, b2, KElt(4)});
        KPoly g = gcd(cubic, cubic.derivative());
        KElt x0;
        if (g.degree() == 1)
            x0 = -g.coeff(0);
        else if (g.degree() == 2)
            x0 = -b2 / KElt(12);
        else
            throw std::logic_error("reduction is singular but has no double root");
        KElt y0 = -(k.reduce(e.a1) * x0 + k.reduce(e.a3)) / KElt(2);
        rst(m, k.lift(x0), 0, k.lift(y0));
        iv = local_invariants(e);

        if (!k.divides(iv.b2)) return {F::I, k.val(iv.disc)};
        if (k.val(e.a6) < 2) return {F::II};
        if (k.val(iv.b8) < 3) return {F::III};
        if (k.val(iv.b6) < 3) return {F::IV};

        // pi | a1, a2; pi^2 | a3, a4; pi^3 | a6.
        rst(m, 0, -e.a1 / QFunc(2), -e.a3 / QFunc(2));
        KElt c2 = k.reduce(e.a2 / pi), c4 = k.reduce(e.a4 / pi.pow(2)), c6 = k.reduce(e.a6 / pi.pow(3));
        KPoly P(std::vector<KElt>{c6, c4, c2, KElt(1)});
        KPoly gp = gcd(P, P.derivative());
        if (gp.degree() == 0) return {F::IStar, 0};

        if (gp.degree() == 1) {
            // Double root: move it to 0 and run the I_m* subprocedure.
            rst(m, pi * k.lift(-gp.coeff(0)), 0, 0);
            int ix = 3, iy = 3;
            QFunc mx = pi.pow(2), my = pi.pow(2);
            for (;;) {
                KElt a2t = k.reduce(e.a2 / pi), a3t = k.reduce(e.a3 / my);
                KElt a6t = k.reduce(e.a6 / (mx * my));
                if (!(a3t * a3t + KElt(4) * a6t).is_zero()) break;
                rst(m, 0, 0, my * k.lift(-a3t / KElt(2)));
                my = my * pi;
                ++iy;
                a2t = k.reduce(e.a2 / pi);
                KElt a4t = k.reduce(e.a4 / (pi * mx));
                a6t = k.reduce(e.a6 / (mx * my));
                if (!(a4t * a4t - KElt(4) * a6t * a2t).is_zero()) break;
                rst(m, mx * k.lift(-a4t / (KElt(2) * a2t)), 0, 0);
                mx = mx * pi;
                ++ix;
            }
            return {F::IStar, ix + iy - 5};
        }

        // Triple root.
        rst(m, pi * k.lift(-c2 / KElt(3)), 0, 0);
        KElt a3t = k.reduce(e.a3 / pi.pow(2)), a6t = k.reduce(e.a6 / pi.pow(4));
        if (!(a3t * a3t + KElt(4) * a6t).is_zero()) return {F::IVStar};
        rst(m, 0, 0, pi.pow(2) * k.lift(-a3t / KElt(2)));
        if (k.val(e.a4) < 4) return {F::IIIStar};
        if (k.val(e.a6) < 6) return {F::IIStar};

        // Not minimal.
        scale(m, pi);
    }
    throw std::logic_error("Tate's algorithm did not terminate");
}

}  // namespace

FiberData tate_at(const WeierstrassCurve& e, const Place& v) {
    e.invariants();  // throws DegenerateCurve
    FiberData fd{v, {}, 0, 0, 0, {}};
    LocalModel& m = fd.model;
    m.minimal = e;
    if (v.is_infinity()) {
        // u = 1/z and (x, y) scaled by (z^(2k), z^(3k)) with k making the model integral at z = 0.
        QFunc inv = QFunc(1) / QFunc::var();
        std::array<QFunc*, 5> a = {&m.minimal.a1, &m.minimal.a2, &m.minimal.a3, &m.minimal.a4, &m.minimal.a6};
        const int w[5] = {1, 2, 3, 4, 6};
        int k = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            *a[i] = a[i]->compose(inv);
            if (a[i]->is_zero()) continue;
            int ord = ord_at(*a[i], Place::finite(QPoly::x()));
            if (ord < 0) k = std::max(k, (-ord + w[i] - 1) / w[i]);
        }
        for (std::size_t i = 0; i < 5; ++i) *a[i] = *a[i] * QFunc::var().pow(k * w[i]);
        m.infinity_weight = k;
        m.uniformizer = QPoly::x();
    } else {
        m.uniformizer = v.poly();
    }
    Residue k(m.uniformizer);
    fd.type = tate_local(m, k);
    Invariants iv = m.minimal.invariants();
    fd.ord_disc = k.val(iv.disc);
    fd.ord_c4 = k.val(iv.c4);
    fd.ord_c6 = k.val(iv.c6);
    if (fd.type.euler() != fd.ord_disc)
        throw std::logic_error("Kodaira type " + fd.type.str() + " inconsistent with ord(disc) = " +
                               std::to_string(fd.ord_disc) + " at " + v.str());
    return fd;
}

std::vector<FiberData> fiber_configuration(const WeierstrassCurve& e) {
    Invariants iv = e.invariants();
    std::vector<Place> candidates;
    auto add_factors = [&](const QPoly& p) {
        if (p.degree() < 1) return;
        for (const auto& f : irreducible_factor(p)) {
            Place v = Place::finite(f.poly);
            if (std::find(candidates.begin(), candidates.end(), v) == candidates.end()) candidates.push_back(v);
        }
    };
    add_factors(iv.disc.num());
    add_factors(iv.disc.den());
    for (const auto* a : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6}) add_factors(a->den());
    candidates.push_back(Place::infinity());
    std::sort(candidates.begin(), candidates.end());

    std::vector<FiberData> out;
    for (const auto& v : candidates) {
        FiberData fd = tate_at(e, v);
        if (fd.ord_disc > 0) out.push_back(std::move(fd));
    }
    return out;
}

int euler_sum(const std::vector<FiberData>& config) {
    int s = 0;
    for (const auto& f : config) s += f.type.euler() * f.place.degree();
    return s;
}

std::string configuration_summary(const std::vector<FiberData>& config) {
    std::map<std::string, std::pair<int, int>> count;  // name -> (euler, multiplicity)
    for (const auto& f : config) {
        auto& c = count[f.type.str()];
        c.first = f.type.euler();
        c.second += f.place.degree();
    }
    std::vector<std::pair<std::string, std::pair<int, int>>> items(count.begin(), count.end());
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second.first > b.second.first; });
    std::string out;
    for (const auto& [name, c] : items) {
        if (!out.empty()) out += " + ";
        if (c.second > 1) out += std::to_string(c.second);
        out += name;
    }
    return out.empty() ? "smooth" : out;
}

}  // namespace k3fib
