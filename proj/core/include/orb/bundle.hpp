#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "orb/groupoid.hpp"
#include "orb/tolerances.hpp"

namespace orb {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A complex vector bundle over a finite groupoid: a fibre dimension per
/// object and a matrix per arrow, acting fibre(src) -> fibre(tgt).
/// Functoriality follows the diagrammatic composition: the matrix of
/// compose(a, b) is action(b) * action(a).
struct VectorBundle {
  GroupoidPtr base;
  std::vector<int> fiber_dim;
  std::vector<Matrix> action;

  int rank_at(int object) const { return fiber_dim[object]; }
};

struct BundleViolation {
  std::string rule;
  int arrow = -1;
  double error = 0.0;
  std::string detail;
};

/// Checks matrix shapes, unit and composition laws (entrywise to tol) and
/// invertibility of every arrow matrix. Shape mismatches throw InputError;
/// law failures are reported as the return value.
std::optional<BundleViolation> bundle_validate(const VectorBundle& e,
                                               double tol = kStructuralTol);

VectorBundle trivial_bundle(GroupoidPtr g, int rank);

/// The rank-1 bundle over a one-object groupoid sending each loop to the
/// scalar character value; used pervasively in tests.
VectorBundle line_bundle_from_character(GroupoidPtr point_groupoid,
                                        const std::vector<std::complex<double>>& values);

struct GoodnessReport {
  bool good = true;
  std::vector<int> bad_loops;  // arrow ids of loops acting nontrivially
};

/// Finite-level reading of good/bad: every loop acts trivially as a
/// 0-dimensional germ, so the bundle is good iff every loop matrix is the
/// identity (to tol).
GoodnessReport is_good(const VectorBundle& e, double tol = kStructuralTol);

struct SectionBasis {
  int dimension = 0;
  std::vector<int> per_orbit_dimension;
  /// basis[i][x] is the value of the i-th basis section at object x.
  std::vector<std::vector<Vector>> basis;
};

/// Solves s(tgt a) = action(a) s(src a) for all arrows by the per-orbit
/// Reynolds projector (average of the loop actions at the representative)
/// followed by transport along connecting arrows.
SectionBasis invariant_sections(const VectorBundle& e, double tol = kStructuralTol);

VectorBundle whitney_sum(const VectorBundle& e, const VectorBundle& f);
VectorBundle tensor(const VectorBundle& e, const VectorBundle& f);
VectorBundle pullback(const GroupoidHom& f, const VectorBundle& e);

/// Restriction of e to an invariant subspace at each orbit representative,
/// transported along the orbit. frames[o] must have orthonormal columns
/// spanning a subspace invariant under every loop action at representative o
/// (empty matrices select the zero bundle on that orbit).
VectorBundle subbundle_from_frames(const VectorBundle& e, const OrbitData& orbits,
                                   const std::vector<Matrix>& frames,
                                   double tol = kStructuralTol);

}  // namespace orb
