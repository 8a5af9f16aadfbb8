#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k3fib/kodaira.hpp"

namespace k3fib {

inline constexpr int kNumCurves = 24;

/// Index of a named (-2)-curve: F1..F3, G1..G3, E{i,j}, E'{i,j}.
class CurveClass {
public:
    CurveClass() = default;  // F1
    static CurveClass F(int i);
    static CurveClass G(int i);
    static CurveClass E(int i, int j);
    static CurveClass Eprime(int i, int j);
    static CurveClass from_index(int index);
    /// Accepts "F1", "G3", "E{1,3}", "E'{2,2}", "E_{1,3}", "E'_{2,2}".
    static CurveClass parse(std::string_view name);
    static const std::array<CurveClass, kNumCurves>& all();

    int index() const { return index_; }
    /// "F1", "E{1,3}", "E'{2,2}".
    std::string str() const;

    friend bool operator==(CurveClass a, CurveClass b) = default;

private:
    explicit CurveClass(int index) : index_(index) {}
    int index_ = 0;
};

using DivisorClass = std::array<long, kNumCurves>;

/// The fixed intersection matrix of the 24 curves.
const std::array<std::array<int, kNumCurves>, kNumCurves>& gram_matrix();
int gram_rank();

long intersect(const DivisorClass& a, const DivisorClass& b);
bool numerically_trivial(const DivisorClass& d);

/// One printed summand c*C; repeated curves are kept apart.
struct DivisorTerm {
    long coeff;
    CurveClass curve;
    friend bool operator==(const DivisorTerm&, const DivisorTerm&) = default;
};

/// Parses "3*G3 + 2*E{1,3} - F1", also "2(F2 + E'{2,1})" style groups.
/// Throws ParseError.
std::vector<DivisorTerm> parse_divisor_terms(std::string_view text);
DivisorClass to_class(const std::vector<DivisorTerm>& terms);
DivisorClass parse_divisor(std::string_view text);
std::string divisor_str(const DivisorClass& d);
std::string terms_str(const std::vector<DivisorTerm>& terms);

DivisorClass positive_part(const DivisorClass& d);
DivisorClass negative_part(const DivisorClass& d);  // returned with positive coefficients

struct FiberRecognition {
    enum class Status { Ok, NotConnected, NotFiber, NotPrimitive, NotExtendedDynkin };
    Status status = Status::Ok;
    std::optional<KodairaType> type;
    /// Curves at which the check fails (components with D.C != 0, or the
    /// support of a second connected piece).
    std::vector<CurveClass> offending;
    std::string message;

    bool ok() const { return status == Status::Ok; }
};

/// Matches an effective divisor against the extended Dynkin diagrams with
/// their fiber multiplicities. Throws std::invalid_argument for a negative
/// coefficient or the zero divisor.
FiberRecognition recognize_fiber(const DivisorClass& d);

struct DivisorCorrection {
    std::vector<DivisorTerm> terms;
    std::vector<std::string> edits;  // "3*E'{1,2} -> 3*E'{1,3}"
    KodairaType zero_type, polar_type;
};

/// Smallest sets of single-term edits (rename a curve or change a
/// coefficient to 0..6) to the printed zero part such that the result is a
/// fiber and zero - polar is numerically trivial. Corrections giving the
/// same class are merged. Empty if nothing within max_edits works.
std::vector<DivisorCorrection> minimal_corrections(const std::vector<DivisorTerm>& zero_terms, const DivisorClass& polar,
                                                   int max_edits = 2);

}  // namespace k3fib
