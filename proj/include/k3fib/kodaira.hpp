#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "k3fib/ellcurve.hpp"
#include "k3fib/factor.hpp"

namespace k3fib {

/// A place of Q(u): a monic irreducible polynomial or the degree valuation at
/// infinity.
class Place {
public:
    /// Throws std::invalid_argument unless p is monic and irreducible.
    static Place finite(const QPoly& p);
    static Place infinity() { return Place(); }

    bool is_infinity() const { return infinity_; }
    const QPoly& poly() const { return p_; }
    int degree() const { return infinity_ ? 1 : p_.degree(); }
    /// "u-1", "u^2+u+1" or "inf".
    std::string str() const { return infinity_ ? "inf" : p_.str(); }

    /// Finite places by (degree, printed form), infinity last.
    friend bool operator<(const Place& a, const Place& b);
    friend bool operator==(const Place& a, const Place& b) { return a.infinity_ == b.infinity_ && a.p_ == b.p_; }

private:
    Place() = default;
    bool infinity_ = true;
    QPoly p_;
};

/// Valuation of a nonzero rational function; at infinity deg(den) - deg(num).
/// Throws std::domain_error for f = 0.
int ord_at(const QFunc& f, const Place& v);

class KodairaType {
public:
    enum class Family { I, IStar, II, III, IV, IVStar, IIIStar, IIStar };

    KodairaType() = default;
    KodairaType(Family f, int n = 0) : family_(f), n_(n) {}
    /// "I0", "I18", "I6*", "II", "III", "IV", "IV*", "III*", "II*".
    static KodairaType parse(std::string_view s);

    Family family() const { return family_; }
    int n() const { return n_; }

    int components() const;
    int euler() const;
    /// Discriminant of the root lattice spanned by non-identity components.
    int root_discriminant() const;
    /// Cyclic factor orders of the component group (empty for trivial).
    std::vector<int> component_group() const;
    bool is_good() const { return family_ == Family::I && n_ == 0; }
    bool is_multiplicative() const { return family_ == Family::I && n_ > 0; }

    std::string str() const;
    friend bool operator==(const KodairaType&, const KodairaType&) = default;
    friend auto operator<=>(const KodairaType& a, const KodairaType& b) { return a.str() <=> b.str(); }

private:
    Family family_ = Family::I;
    int n_ = 0;
};

/// Minimal model at a place in a local coordinate z (z = u at finite places,
/// z = 1/u at infinity) together with the change of coordinates
/// x = U^2 x' + R, y = U^3 y' + S U^2 x' + T from the input model written in z.
struct LocalModel {
    QPoly uniformizer;       // p(z), or z at infinity
    int infinity_weight = 0; // k with (x, y) scaled by (z^(2k), z^(3k)) after u = 1/z
    WeierstrassCurve minimal;
    QFunc U = 1, R, S, T;

    /// Coordinates of an input-model point on the minimal model.
    CurvePoint to_local(const CurvePoint& p) const;
};

struct FiberData {
    Place place;
    KodairaType type;
    int ord_disc = 0, ord_c4 = 0, ord_c6 = 0;  // on the minimal model; c4 = 0 gives a large sentinel
    LocalModel model;
};

inline constexpr int kInfiniteOrder = 1 << 20;

/// Tate's algorithm over the residue field Q[u]/(p). Throws DegenerateCurve.
FiberData tate_at(const WeierstrassCurve& e, const Place& v);

/// All places with bad reduction, ordered as Place::operator<.
std::vector<FiberData> fiber_configuration(const WeierstrassCurve& e);

/// Sum of euler(type) * deg(place).
int euler_sum(const std::vector<FiberData>& config);

/// "2II* + IV" style summary after expanding places of degree d into d fibers,
/// ordered by decreasing Euler number then name.
std::string configuration_summary(const std::vector<FiberData>& config);

}  // namespace k3fib
