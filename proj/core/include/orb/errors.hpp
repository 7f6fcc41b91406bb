#pragma once

#include <stdexcept>

namespace orb {

// Error taxonomy shared across the library. The CLI maps each class onto a
// distinct exit code, so operations throw the most specific one that applies.

/// Malformed input data: bad permutations, shape mismatches, unresolvable
/// references.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally parseable data that violates an axiom (group table not
/// associative, groupoid composition defect, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical identity failed beyond its tolerance.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The request is well-formed but exceeds a configured search or size bound.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A property the library guarantees by construction failed its re-check.
/// Never swallowed: seeing one of these is a bug report.
struct InternalCheckError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace orb
