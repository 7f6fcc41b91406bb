#pragma once

#include <complex>
#include <vector>

#include "orb/bundle.hpp"
#include "orb/inertia.hpp"
#include "orb/tolerances.hpp"

namespace orb {

/// Order of a loop arrow inside its isotropy group.
int loop_order(const Groupoid& g, int loop_arrow);

/// The pullback of a bundle along the basepoint homomorphism, together with
/// the automorphism acting on the fibre over each loop as the loop itself.
struct CanonicalAutomorphism {
  InertiaGroupoid inertia;
  VectorBundle pulled_back;                 // over inertia.groupoid
  std::vector<Matrix> loop_automorphism;    // per loop (= inertia object)
};

/// Verifies that the automorphism commutes with the inertia action; a failure
/// beyond tol means the input bundle is not functorial and raises
/// NumericalError.
CanonicalAutomorphism canonical_automorphism(const VectorBundle& e,
                                             double tol = kStructuralTol);

/// Spectral pieces of the canonical automorphism at one loop: one projector
/// per n-th root of unity with nonzero rank, n the loop order.
struct EigenPiece {
  int root_index = 0;    // eigenvalue = exp(2 pi i root_index / loop_order)
  int loop_order = 1;
  std::complex<double> eigenvalue;
  Matrix projector;
  int rank = 0;
};

struct EigenDecomposition {
  InertiaOrbits orbits;
  std::vector<std::vector<EigenPiece>> per_loop;
};

/// Exact finite Fourier averaging: P_j = (1/n) sum_k theta_j^{-k} Phi^k.
/// Completeness, orthogonality, idempotence and rank constancy along inertia
/// orbits are verified to tol (NumericalError on failure).
EigenDecomposition eigenbundle_decomposition(const VectorBundle& e,
                                             double tol = kStructuralTol);

/// The delocalised Chern character over a finite groupoid: one complex value
/// per inertia orbit, the trace of the loop action there.
struct ChDelocValue {
  std::vector<std::complex<double>> values;        // per inertia orbit
  std::vector<int> orbit_representative_loop;      // arrow id per orbit
};

/// Verifies constancy of the trace along each inertia orbit to tol.
ChDelocValue ch_deloc(const VectorBundle& e, double tol = kStructuralTol);

/// Formal difference of two bundles over a common base.
struct KClass {
  VectorBundle plus, minus;
};

ChDelocValue ch_deloc_of_class(const KClass& k, double tol = kStructuralTol);

/// Rank of K^0 tensored with C: the sum over orbits of the number of
/// conjugacy classes of the isotropy group.
int k_rank(const Groupoid& g);

/// Rational spanning set of bundles: per orbit, one coset-permutation bundle
/// for each cyclic subgroup of the isotropy group; completed, where the trace
/// matrix is still rank-deficient, by summands of the regular bundle split
/// along commutant eigenprojectors. Every member is an actual bundle.
std::vector<VectorBundle> spanning_family(GroupoidPtr g);

struct RankCheck {
  bool pass = false;
  int numerical_rank = 0;
  int expected = 0;  // inertia orbit count
  int k_theory_rank = 0;
  Matrix matrix;     // ch_deloc values, family x inertia orbits
};

/// Desk-scale rank form of the delocalised Chern character isomorphism:
/// the family's trace matrix must reach rank = inertia orbits = k_rank.
RankCheck ch_deloc_rank_check(GroupoidPtr g, double tol = kRankTol);

/// A representation of the isotropy group of one orbit, extended to a bundle
/// over the whole groupoid by transport (zero fibres on other orbits).
VectorBundle bundle_from_orbit_representation(GroupoidPtr g, const OrbitData& orbits, int orbit,
                                              const std::vector<Matrix>& rep_matrices);

}  // namespace orb
