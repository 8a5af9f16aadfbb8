#pragma once

#include <vector>

#include "k3fib/ellcurve.hpp"
#include "k3fib/kodaira.hpp"

namespace k3fib {

/// Claimed Mordell-Weil group: torsion structure with listed points and the
/// free part with claimed generator heights.
struct MWClaim {
    int rank = 0;
    std::vector<int> torsion;                // cyclic factor orders
    std::vector<CurvePoint> torsion_points;  // excluding O
    std::vector<int> torsion_orders;         // claimed order of each torsion point
    std::vector<CurvePoint> free_generators;
    std::vector<Rational> claimed_heights;

    long torsion_size() const;
};

struct SurfaceConstants {
    static constexpr int chi = 2;
    static constexpr int rho = 20;
    static constexpr int target_determinant = 3;
};

/// Local height contribution of a fiber component.
///
/// Indices: 0 is the identity component. I_n uses k in [0, n). I_n* uses 1 for
/// the near component and 2, 3 for the far pair. III and III* use 1; IV and
/// IV* use 1 and 2. Throws std::invalid_argument for an index the type lacks.
Rational local_contribution(const KodairaType& type, int index);

/// True iff nP = O and kP != O for 0 < k < n. Throws std::invalid_argument if
/// P is not on E.
bool torsion_verify(const WeierstrassCurve& e, const CurvePoint& p, int n);

/// Component of the fiber f met by P, from valuations of the division
/// polynomials psi2, psi3 on the minimal model. I_n indices come back as
/// min(k, n - k). Throws std::logic_error if the valuations fit no component.
int component_index(const WeierstrassCurve& e, const CurvePoint& p, const FiberData& f);

/// (P.O): sum over places of deg(v) max(0, -ord_v(x)/2) on minimal models.
/// Places outside config are examined where x has poles and at infinity.
int section_meets_zero(const WeierstrassCurve& e, const CurvePoint& p, const std::vector<FiberData>& config);

/// <P, P> = 2 chi + 2 (P.O) - sum of deg(v) contr_v(P).
Rational height(const WeierstrassCurve& e, const CurvePoint& p, const std::vector<FiberData>& config);

/// 2 + sum deg(v) (m_v - 1) + rank == rho.
bool shioda_tate_check(const std::vector<FiberData>& config, const MWClaim& claim);

/// prod disc_v^deg(v) * det(MWL) / |tors|^2 == 3, det(MWL) from the claimed
/// heights (rank <= 1).
bool determinant_check(const std::vector<FiberData>& config, const MWClaim& claim);

/// The claimed torsion group embeds in the product of the component groups.
bool torsion_injection_check(const std::vector<FiberData>& config, const MWClaim& claim);

/// Whether the finite abelian group with cyclic factors g embeds in the one
/// with cyclic factors h.
bool abelian_embeds(const std::vector<int>& g, const std::vector<int>& h);

}  // namespace k3fib
