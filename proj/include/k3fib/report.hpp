#pragma once

#include <string>
#include <string_view>

#include "k3fib/catalog.hpp"

namespace k3fib {

/// Structured report: {version, fibrations:[{id, resolved_equation, fibers,
/// mw:{rank, torsion, heights}, checks, notes}], identities, notes, pass}.
/// Output is deterministic; rationals are strings.
std::string report_to_json(const Report& r, int indent = 2);

/// Inverse of report_to_json. Throws std::invalid_argument on malformed input.
Report report_from_json(std::string_view text);

/// Human-readable rendering of the same data.
std::string report_to_text(const Report& r);

}  // namespace k3fib
