#pragma once

#include <vector>

#include "orb/groupoid.hpp"

namespace orb {

/// Weights (a_0, ..., a_n) of a weighted projective space; all entries >= 1.
struct WeightVector {
  std::vector<long long> weights;

  void validate() const;  // throws InputError
};

/// Effective iff the weights are coprime overall.
bool wps_effective(const WeightVector& w);

/// Isotropy order of points supported exactly on the given coordinate set:
/// the gcd of the active weights. Throws InputError on an empty support.
long long wps_isotropy(const WeightVector& w, const std::vector<int>& support);

/// One singular stratum: a coordinate support and its cyclic local group
/// order. A support is a stratum when its gcd exceeds 1 and no strict
/// superset realizes the same gcd (equal-order sub-supports merge upward).
struct Stratum {
  std::vector<int> support;
  long long order = 1;
};

/// Strata ordered by support size (largest first), then lexicographically.
std::vector<Stratum> wps_strata(const WeightVector& w);

/// Finite skeleton of the cone chart: Z_n acting on n+1 points with one free
/// orbit (rotation on 0..n-1) and one fixed point.
GroupAction cone_point_model(int n);

/// Glued cones: the cone skeletons for each order joined by one shared free
/// connecting orbit (a single-order list reduces to the plain cone model).
GroupoidPtr multi_cone_model(const std::vector<int>& orders);

}  // namespace orb
