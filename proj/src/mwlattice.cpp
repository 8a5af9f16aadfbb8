#include "k3fib/mwlattice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace k3fib {

long MWClaim::torsion_size() const {
    long n = 1;
    for (int c : torsion) n *= c;
    return n;
}

Rational local_contribution(const KodairaType& type, int index) {
    using F = KodairaType::Family;
    auto bad = [&] {
        return std::invalid_argument("no component " + std::to_string(index) + " on a fiber of type " + type.str());
    };
    if (index == 0) return 0;
    int n = type.n();
    switch (type.family()) {
        case F::I:
            if (index < 0 || index >= std::max(n, 1)) throw bad();
            return Rational(index * (n - index), n);
        case F::IStar:
            if (index == 1) return 1;
            if (index == 2 || index == 3) return Rational(1) + Rational(n, 4);
            throw bad();
        case F::III:
            if (index == 1) return Rational(1, 2);
            throw bad();
        case F::IIIStar:
            if (index == 1) return Rational(3, 2);
            throw bad();
        case F::IV:
            if (index == 1 || index == 2) return Rational(2, 3);
            throw bad();
        case F::IVStar:
            if (index == 1 || index == 2) return Rational(4, 3);
            throw bad();
        case F::II:
        case F::IIStar: throw bad();
    }
    throw bad();
}

bool torsion_verify(const WeierstrassCurve& e, const CurvePoint& p, int n) {
    if (!e.contains(p)) throw std::invalid_argument("point " + p.str() + " is not on " + e.str());
    if (n < 1) throw std::invalid_argument("torsion order must be positive");
    CurvePoint q = p;
    for (int k = 1; k < n; ++k) {
        if (q.infinity) return false;
        q = add(e, q, p);
    }
    return q.infinity;
}

namespace {

int val_or_inf(const QFunc& f, const Place& v) { return f.is_zero() ? kInfiniteOrder : ord_at(f, v); }

int max_index(const KodairaType& t) {
    using F = KodairaType::Family;
    switch (t.family()) {
        case F::I: return std::max(t.n() - 1, 0);
        case F::IStar: return 3;
        case F::III:
        case F::IIIStar: return 1;
        case F::IV:
        case F::IVStar: return 2;
        default: return 0;
    }
}

}  // namespace

int component_index(const WeierstrassCurve& e, const CurvePoint& p, const FiberData& f) {
    if (!e.contains(p)) throw std::invalid_argument("point " + p.str() + " is not on " + e.str());
    if (p.infinity || f.type.is_good()) return 0;
    const CurvePoint q = f.model.to_local(p);
    const WeierstrassCurve& m = f.model.minimal;
    const Place z = Place::finite(f.model.uniformizer);
    if (val_or_inf(q.x, z) < 0) return 0;

    Invariants iv = m.invariants();
    QFunc psi2 = QFunc(2) * q.y + m.a1 * q.x + m.a3;
    QFunc dx = QFunc(3) * q.x * q.x + QFunc(2) * m.a2 * q.x + m.a4 - m.a1 * q.y;
    int v2 = val_or_inf(psi2, z);
    if (v2 <= 0 || val_or_inf(dx, z) <= 0) return 0;

    if (f.type.is_multiplicative()) return std::min(v2, f.type.n() / 2);

    QFunc x = q.x;
    QFunc psi3 = QFunc(3) * x.pow(4) + iv.b2 * x.pow(3) + QFunc(3) * iv.b4 * x * x + QFunc(3) * iv.b6 * x + iv.b8;
    int v3 = val_or_inf(psi3, z);
    Rational contr = (v3 >= 3 * v2) ? Rational(2 * v2, 3) : Rational(v3, 4);
    for (int k = 1; k <= max_index(f.type); ++k)
        if (local_contribution(f.type, k) == contr) return k;
    throw std::logic_error("section " + p.str() + " has psi valuations (" + std::to_string(v2) + ", " +
                           std::to_string(v3) + ") matching no component of " + f.type.str() + " at " +
                           f.place.str());
}

int section_meets_zero(const WeierstrassCurve& e, const CurvePoint& p, const std::vector<FiberData>& config) {
    if (p.infinity) throw std::invalid_argument("(P.O) of the zero section");
    std::vector<Place> places;
    auto add_place = [&](const Place& v) {
        if (std::find(places.begin(), places.end(), v) == places.end()) places.push_back(v);
    };
    auto add_factors = [&](const QPoly& poly) {
        if (poly.degree() < 1) return;
        for (const auto& fac : irreducible_factor(poly)) add_place(Place::finite(fac.poly));
    };
    for (const auto& fd : config) add_place(fd.place);
    add_factors(p.x.den());
    QFunc disc = e.invariants().disc;
    add_factors(disc.num());
    add_factors(disc.den());
    for (const auto& a : e.coefficients()) add_factors(a.den());
    add_place(Place::infinity());

    int total = 0;
    for (const auto& v : places) {
        auto it = std::find_if(config.begin(), config.end(), [&](const FiberData& f) { return f.place == v; });
        FiberData fd = it != config.end() ? *it : tate_at(e, v);
        CurvePoint q = fd.model.to_local(p);
        int vx = val_or_inf(q.x, Place::finite(fd.model.uniformizer));
        if (vx >= 0) continue;
        if (vx % 2 != 0) throw std::logic_error("odd pole order of x at " + v.str());
        total += v.degree() * (-vx / 2);
    }
    return total;
}

Rational height(const WeierstrassCurve& e, const CurvePoint& p, const std::vector<FiberData>& config) {
    if (p.infinity) return 0;
    Rational h = Rational(2 * SurfaceConstants::chi + 2 * section_meets_zero(e, p, config));
    for (const auto& fd : config) h -= Rational(fd.place.degree()) * local_contribution(fd.type, component_index(e, p, fd));
    return h;
}

bool shioda_tate_check(const std::vector<FiberData>& config, const MWClaim& claim) {
    int s = 2 + claim.rank;
    for (const auto& fd : config) s += fd.place.degree() * (fd.type.components() - 1);
    return s == SurfaceConstants::rho;
}

bool determinant_check(const std::vector<FiberData>& config, const MWClaim& claim) {
    if (claim.rank > 1 || static_cast<int>(claim.claimed_heights.size()) != claim.rank) return false;
    Rational d = 1;
    for (const auto& fd : config) d *= Rational(fd.type.root_discriminant()).pow(fd.place.degree());
    for (const auto& h : claim.claimed_heights) d *= h;
    long t = claim.torsion_size();
    return d / Rational(t * t) == Rational(SurfaceConstants::target_determinant);
}

namespace {

// Prime-power decomposition of a list of cyclic orders: prime -> exponents.
std::map<long, std::vector<int>> primary_parts(const std::vector<int>& orders) {
    std::map<long, std::vector<int>> out;
    for (int n : orders) {
        long m = n;
        for (long p = 2; p * p <= m; ++p) {
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            if (e) out[p].push_back(e);
        }
        if (m > 1) out[m].push_back(1);
    }
    for (auto& [p, es] : out) std::sort(es.rbegin(), es.rend());
    return out;
}

}  // namespace

bool abelian_embeds(const std::vector<int>& g, const std::vector<int>& h) {
    auto pg = primary_parts(g), ph = primary_parts(h);
    for (const auto& [p, eg] : pg) {
        const auto& eh = ph[p];
        if (eg.size() > eh.size()) return false;
        for (std::size_t i = 0; i < eg.size(); ++i)
            if (eg[i] > eh[i]) return false;
    }
    return true;
}

bool torsion_injection_check(const std::vector<FiberData>& config, const MWClaim& claim) {
    std::vector<int> product;
    for (const auto& fd : config)
        for (int d = 0; d < fd.place.degree(); ++d)
            for (int c : fd.type.component_group()) product.push_back(c);
    return abelian_embeds(claim.torsion, product);
}

}  // namespace k3fib
