#include "orb/models.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "orb/errors.hpp"

namespace orb {

void WeightVector::validate() const {
  if (weights.empty()) throw InputError("weight vector must be nonempty");
  for (long long w : weights)
    if (w < 1) throw InputError("weights must be positive integers");
}

bool wps_effective(const WeightVector& w) {
  w.validate();
  long long g = 0;
  for (long long a : w.weights) g = std::gcd(g, a);
  return g == 1;
}

long long wps_isotropy(const WeightVector& w, const std::vector<int>& support) {
  w.validate();
  if (support.empty()) throw InputError("wps_isotropy: support must be nonempty");
  long long g = 0;
  for (int i : support) {
    if (i < 0 || i >= static_cast<int>(w.weights.size()))
      throw InputError("wps_isotropy: support index out of range");
    g = std::gcd(g, w.weights[i]);
  }
  return g;
}

std::vector<Stratum> wps_strata(const WeightVector& w) {
  w.validate();
  const int n = static_cast<int>(w.weights.size());
  if (n > 20) throw CapabilityError("wps_strata: too many weights for support enumeration");

  std::vector<long long> gcd_of(1u << n, 0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int bit = std::countr_zero(mask);
    gcd_of[mask] = std::gcd(gcd_of[mask & (mask - 1)], w.weights[bit]);
  }

  std::vector<Stratum> strata;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (gcd_of[mask] <= 1) continue;
    // merged upward: skip if some strict superset has the same gcd
    bool maximal = true;
    for (int i = 0; i < n && maximal; ++i)
      if (!(mask & (1u << i)) && gcd_of[mask | (1u << i)] == gcd_of[mask]) maximal = false;
    if (!maximal) continue;
    Stratum s;
    s.order = gcd_of[mask];
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.support.push_back(i);
    strata.push_back(std::move(s));
  }
  std::sort(strata.begin(), strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.support.size() != b.support.size()) return a.support.size() > b.support.size();
    return a.support < b.support;
  });
  return strata;
}

GroupAction cone_point_model(int n) {
  if (n < 1) throw InputError("cone_point_model: order must be positive");
  GroupAction a;
  a.group = FiniteGroup::cyclic(n);
  a.points = n + 1;
  a.table.assign(n, std::vector<int>(n + 1));
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < n; ++x) a.table[g][x] = (x + g) % n;
    a.table[g][n] = n;  // the cone point
  }
  return a;
}

GroupoidPtr multi_cone_model(const std::vector<int>& orders) {
  if (orders.empty()) throw InputError("multi_cone_model: order list must be nonempty");
  std::vector<GroupoidPtr> parts;
  for (int n : orders) parts.push_back(action_groupoid(cone_point_model(n)));
  if (orders.size() == 1) return parts.front();
  parts.push_back(unit_groupoid(1));  // the shared connecting orbit
  return disjoint_union(parts);
}

}  // namespace orb
