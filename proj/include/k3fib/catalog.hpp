#pragma once

#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3fib/ellcurve.hpp"
#include "k3fib/kodaira.hpp"
#include "k3fib/mwlattice.hpp"
#include "k3fib/nslattice.hpp"
#include "k3fib/x3field.hpp"

namespace k3fib {

/// A printed alternative, labelled by where it appears ("table", "text").
template <class T>
struct Variant {
    std::string label;
    T value;
    std::string text;
};

struct PointSpec {
    bool free = false;
    int order = 0;  // torsion points only
    CurvePoint point;
    std::string text;
};

struct FiberSpec {
    KodairaType type;
    Place place;
};

struct FibrationRecord {
    int id = 0;
    std::vector<Variant<std::string>> parameters;
    std::vector<Variant<WeierstrassCurve>> equations;
    std::optional<std::string> u_expr;
    std::string x_expr, y_expr;
    std::optional<QPoly> field;  // in the generator `a`
    std::vector<FiberSpec> fibers;
    std::string summary;
    int rank = 0;
    std::vector<int> torsion;
    std::vector<Variant<std::vector<PointSpec>>> points;
    std::vector<Rational> heights;
    std::optional<std::string> derived, derived_printed;
    std::vector<std::pair<std::string, Place>> lattice_fibers;
};

struct NeighborStep {
    int from = 0, to = 0;
    std::string parameter;  // in u, X, Y of the source fibration
    QFunc base_change, scale;
    WeierstrassCurve curve;  // intermediate model in u'
    std::optional<std::string> control;  // perturbed target parameter
};

struct TwistRelation {
    int source = 0, target = 0;
    QFunc d;
};

/// Thrown for malformed catalog text.
class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Catalog {
    std::vector<FibrationRecord> records;
    std::vector<std::pair<std::string, std::string>> divisors;
    std::vector<std::string> functions;
    std::vector<NeighborStep> neighbors;
    std::optional<TwistRelation> twist;
    std::map<std::string, std::string> identities;

    /// Throws std::out_of_range for an unknown id.
    const FibrationRecord& record(int id) const;
    /// "div1", "div1.zero", "div1.polar". Throws std::out_of_range.
    DivisorClass divisor(std::string_view name) const;
    std::vector<DivisorTerm> divisor_terms(std::string_view name) const;
};

/// Throws CatalogError or ParseError.
Catalog parse_catalog(std::string_view text);
/// The catalog shipped with the library.
const Catalog& builtin_catalog();
std::string_view builtin_catalog_text();

/// Multiset reading of "2II* + IV": type name -> count.
std::map<std::string, int> parse_summary(std::string_view s);

/// Constant field of a record (nullptr for Q).
NumberFieldPtr record_field(const FibrationRecord& rec);

/// f(u) evaluated at an element of C(X3).
X3Element eval_at(const QFunc& f, const X3Element& u);

/// Y^2 + a1 XY + a3 Y - X^3 - a2 X^2 - a4 X - a6 at (u, X, Y).
X3Element weierstrass_residual(const WeierstrassCurve& e, const X3Element& u, const X3Element& x, const X3Element& y);

struct ChangeOfVariables {
    bool ok = false;
    std::string parameter_label;   // variant used for u when u is the parameter
    std::string parameter_text;
    std::optional<X3Element> u, x, y;
    std::vector<std::string> notes;
};

/// Substitutes the record's (u, X, Y) into e and tests for zero in C(X3).
/// Without an explicit u, each parameter variant is tried and the unique one
/// that works is reported. Failures are reported, not thrown.
ChangeOfVariables verify_change_of_variables(const FibrationRecord& rec, const WeierstrassCurve& e);

struct VariantResolution {
    std::optional<WeierstrassCurve> curve;
    std::string label;
    std::vector<FiberData> config;
    std::vector<std::string> matching;  // labels whose configuration fits
    std::string message;

    bool ok() const { return curve.has_value(); }
};

/// Fiber configurations of all equation variants against rec.fibers.
bool fibers_match(const std::vector<FiberData>& config, const std::vector<FiberSpec>& expected);
VariantResolution resolve_variant(const FibrationRecord& rec);

struct PointResolution {
    std::vector<PointSpec> points;
    std::string label;
    std::vector<std::string> notes;
    bool ok = false;
};

/// The unique point-list variant whose points all lie on e.
PointResolution resolve_points(const FibrationRecord& rec, const WeierstrassCurve& e);

/// Evaluates "(x, y) - G1" style expressions against the resolved points.
CurvePoint derive_point(std::string_view expr, const WeierstrassCurve& e, const std::vector<PointSpec>& points);

struct CheckResult {
    std::string name;
    bool ok = false;
};

struct FiberEntry {
    std::string place;
    std::string type;
    int euler = 0;
};

struct FibrationReport {
    int id = 0;
    std::string resolved_equation;
    std::string equation_variant;
    std::string parameter;
    std::vector<FiberEntry> fibers;
    std::string summary;
    int rank = 0;
    std::vector<int> torsion;
    std::vector<std::string> heights;  // exact rationals "3/2"
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool pass() const;
    /// Throws std::out_of_range when the check is absent.
    bool check(std::string_view name) const;
};

/// All per-fibration checks; sub-step failures are recorded, not thrown.
FibrationReport verify_fibration(const Catalog& cat, const FibrationRecord& rec);

struct NeighborResult {
    int from = 0, to = 0;
    bool identity = false;        // u' == base_change(u_target)
    bool curve = false;           // base change of the intermediate model is the target curve
    bool control_rejected = true; // perturbed parameter fails (true when no control)
    std::string message;
};

std::vector<NeighborResult> neighbor_consistency(const Catalog& cat);

/// Q1 identity, Q2 factor and the negative control.
std::vector<CheckResult> q_curve_identities(const Catalog& cat);
bool twist_check(const Catalog& cat);
bool elimination_check(const Catalog& cat);

struct CubicCheck {
    bool map_verified = false, flex = false;
    bool same_j = false, same_fibers = false, sixth_power_ratio = false;
    std::string curve;
    bool ok() const { return map_verified && same_j && same_fibers && sixth_power_ratio; }
};
CubicCheck cubic_check(const Catalog& cat);

/// Whether f is c * g^6 with g in Q(u) and c a sixth power in Q(cbrt 4).
bool is_sixth_power_over_cbrt4(const QFunc& f);

struct DivisorReport {
    std::vector<CheckResult> trivial;        // numerically_trivial per function
    std::vector<CheckResult> fibers;         // lattice fiber vs analytic type
    std::vector<std::string> corrections;    // typo corrections applied
    std::vector<std::pair<std::string, std::string>> recognized;  // name -> type or mismatch
    bool ok() const;
};

/// Numerical triviality, fiber recognition and, with fix_typos, the minimal
/// corrections of printed zero parts that fail recognition. `only` limits
/// the work to one divisor group ("func", "div1", "div3", "div4").
DivisorReport divisor_checks(const Catalog& cat, bool fix_typos, std::string_view only = {});

/// Places mapped along u -> c/u: p(u) to the monic form of u^d p(c/u), u to
/// inf and inf to u.
Place invert_place(const Place& v, const Rational& c = 1);

/// Fiber types of `a` at v agree with those of `b` at invert_place(v) for
/// every place of either configuration.
bool configurations_correspond(const std::vector<FiberData>& a, const std::vector<FiberData>& b,
                               const Rational& c = 1);

struct Report {
    std::string version;
    std::vector<FibrationReport> fibrations;
    std::vector<CheckResult> identities;
    std::vector<std::string> notes;
    bool pass = false;
};

/// Verifies the selected records (all when ids is empty) and, for a full
/// run, the cross-fibration identities.
Report verify_catalog(const Catalog& cat, const std::vector<int>& ids = {});

}  // namespace k3fib
