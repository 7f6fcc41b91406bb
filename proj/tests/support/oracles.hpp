#pragma once

// Independent oracles for expected test values. These deliberately avoid the
// library's code paths: plain containers, brute-force enumeration.

#include <algorithm>
#include <complex>
#include <numeric>
#include <set>
#include <vector>

#include "orb/bundle.hpp"
#include "orb/groupoid.hpp"

namespace oracle {

// Size of the closure of the given permutations under composition.
inline int closure_order(int degree, std::vector<std::vector<int>> gens) {
  std::vector<int> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);
  std::set<std::vector<int>> closed{identity};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snapshot(closed.begin(), closed.end());
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) {
        std::vector<int> ab(degree);
        for (int x = 0; x < degree; ++x) ab[x] = a[b[x]];
        if (closed.insert(ab).second) grew = true;
      }
    for (const auto& g : gens)
      if (closed.insert(g).second) grew = true;
  }
  return static_cast<int>(closed.size());
}

// Sorted conjugacy class sizes from a raw multiplication table with the
// inverse found by scanning.
inline std::vector<int> conjugacy_class_sizes(const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul[a][b] == 0) inv[a] = b;
  std::vector<int> cls(n, -1);
  std::vector<int> sizes;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    int size = 0;
    for (int g = 0; g < n; ++g) {
      int y = mul[mul[g][x]][inv[g]];
      if (cls[y] < 0) {
        cls[y] = x;
        ++size;
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline int commuting_count(const std::vector<std::vector<int>>& mul, int x) {
  int count = 0;
  for (int h = 0; h < static_cast<int>(mul.size()); ++h)
    if (mul[h][x] == mul[x][h]) ++count;
  return count;
}

// Distinct subgroups generated by single elements, as element-id sets.
inline std::set<std::vector<int>> generated_cyclic_subgroups(
    const std::vector<std::vector<int>>& mul) {
  std::set<std::vector<int>> subs;
  for (int x = 0; x < static_cast<int>(mul.size()); ++x) {
    std::vector<int> members{0};
    int p = x;
    while (p != 0) {
      members.push_back(p);
      p = mul[p][x];
    }
    std::sort(members.begin(), members.end());
    subs.insert(members);
  }
  return subs;
}

// Burnside-style sector count: sum over conjugacy class representatives of
// the number of orbits of the centralizer acting on the fixed-point set.
inline int twisted_sector_count(const orb::GroupAction& a) {
  const int n = a.group.order();
  std::vector<int> cls(n, -1);
  int total = 0;
  for (int g = 0; g < n; ++g) {
    if (cls[g] >= 0) continue;
    for (int h = 0; h < n; ++h) cls[a.group.conjugate(h, g)] = g;
    std::vector<int> fixed;
    for (int x = 0; x < a.points; ++x)
      if (a.act(g, x) == x) fixed.push_back(x);
    // orbits of Z(g) on the fixed set, by repeated sweeping
    std::vector<int> orbit(a.points, -1);
    for (int x : fixed) {
      if (orbit[x] >= 0) continue;
      for (int z = 0; z < n; ++z)
        if (a.group.mul(z, g) == a.group.mul(g, z)) orbit[a.act(z, x)] = x;
      ++total;
    }
  }
  return total;
}

// Sum over orbits of the averaged trace of the loop actions: the invariant
// section dimension by the character formula.
inline double section_dimension_by_averaging(const orb::VectorBundle& e) {
  const orb::Groupoid& g = *e.base;
  auto orbits = orb::orbit_space(g);
  std::vector<int> rep(orbits.count, -1);
  for (int x = g.objects() - 1; x >= 0; --x) rep[orbits.quotient[x]] = x;
  double total = 0.0;
  for (int o = 0; o < orbits.count; ++o) {
    std::complex<double> sum = 0.0;
    int count = 0;
    for (int a = 0; a < g.arrows(); ++a)
      if (g.src(a) == rep[o] && g.tgt(a) == rep[o]) {
        sum += e.action[a].trace();
        ++count;
      }
    total += (sum / static_cast<double>(count)).real();
  }
  return total;
}

}  // namespace oracle
