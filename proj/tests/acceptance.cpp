// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "orb/chern.hpp"
#include "orb/equivalence.hpp"
#include "orb/inertia.hpp"
#include "orb/models.hpp"
#include "support/oracles.hpp"
#include "support/random_bundles.hpp"
#include "support/suite.hpp"

using namespace orb;

namespace {

struct Criterion {
  int failures = 0;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (failures == 0) first_failure = what;
      ++failures;
    }
  }
};

bool run(int number, const std::string& title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.failures == 0) {
    std::printf("criterion %d: %s ... PASS (%.2fs)\n", number, title.c_str(), seconds);
    return true;
  }
  std::printf("criterion %d: %s ... FAIL (%d failures; first: %s)\n", number, title.c_str(),
              c.failures, c.first_failure.c_str());
  return false;
}

std::vector<std::vector<int>> random_cover(const Groupoid& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<std::vector<int>> cover(2);
  for (int x = 0; x < g.objects(); ++x) {
    bool placed = false;
    for (auto& chart : cover)
      if (coin(rng)) {
        chart.push_back(x);
        placed = true;
      }
    if (!placed) cover[0].push_back(x);
  }
  for (auto it = cover.begin(); it != cover.end();)
    it = it->empty() ? cover.erase(it) : std::next(it);
  if (cover.empty()) cover.push_back({});
  return cover;
}

}  // namespace

int main() {
  auto actions = suite::actions();
  std::printf("suite: %d actions\n", static_cast<int>(actions.size()));
  bool all = true;

  all &= run(1, "inertia decomposition comparison is a weak equivalence", [&](Criterion& c) {
    c.require(actions.size() >= 50, "suite must contain at least 50 actions");
    for (const auto& [name, a] : actions) {
      auto dec = inertia_decomposition(a);
      c.require(dec.certificate.weak, name + ": comparison failed the weak equivalence check");
    }
  });

  all &= run(2, "rank identity k_rank = inertia sectors = numerical rank", [&](Criterion& c) {
    for (const auto& [name, a] : actions) {
      auto g = action_groupoid(a);
      const int sectors = inertia_orbit_count(*g);
      c.require(k_rank(*g) == sectors, name + ": k_rank differs from the sector count");
      auto check = ch_deloc_rank_check(g, 1e-6);
      c.require(check.pass && check.numerical_rank == sectors,
                name + ": numerical rank " + std::to_string(check.numerical_rank) +
                    " != " + std::to_string(sectors));
    }
  });

  all &= run(3, "WP(2,3) singular data", [&](Criterion& c) {
    WeightVector w{{2, 3}};
    c.require(wps_effective(w), "WP(2,3) must be effective");
    c.require(wps_isotropy(w, {0, 1}) == 1, "generic isotropy must be trivial");
    auto strata = wps_strata(w);
    std::multiset<long long> orders;
    for (const auto& s : strata) orders.insert(s.order);
    c.require(orders == std::multiset<long long>{2, 3}, "strata local groups must be {Z2, Z3}");
  });

  all &= run(4, "bad-bundle section vanishing over point//Z2", [&](Criterion& c) {
    auto z2pt = point_quotient(FiniteGroup::cyclic(2));
    VectorBundle sign;
    sign.base = z2pt;
    sign.fiber_dim = {1};
    sign.action = {Matrix::Identity(1, 1), -Matrix::Identity(1, 1)};
    c.require(invariant_sections(sign, 1e-9).dimension == 0,
              "sign bundle must have no nonzero invariant section");
    c.require(invariant_sections(trivial_bundle(z2pt, 1), 1e-9).dimension == 1,
              "trivial line bundle must have a one-dimensional section space");
    c.require(!is_good(sign).good, "sign bundle must be bad");
  });

  all &= run(5, "Morita invariance under localisation", [&](Criterion& c) {
    std::mt19937_64 rng(0xC0FFEE);
    for (const auto& [name, a] : actions) {
      auto g = action_groupoid(a);
      if (g->objects() == 0) continue;
      auto sig = morita_signature(*g);
      const int sectors = inertia_orbit_count(*g);
      const int rank = k_rank(*g);

      auto family = spanning_family(g);
      VectorBundle fixed = family.front();
      if (family.size() > 1) fixed = whitney_sum(fixed, family[1]);
      auto fixed_values = ch_deloc(fixed);

      for (int round = 0; round < 3; ++round) {
        auto loc = localisation(g, random_cover(*g, rng));
        c.require(signatures_equal(sig, morita_signature(*loc.groupoid)),
                  name + ": signature changed under localisation");
        c.require(k_rank(*loc.groupoid) == rank, name + ": k_rank changed under localisation");
        c.require(inertia_orbit_count(*loc.groupoid) == sectors,
                  name + ": sector count changed under localisation");

        auto pulled = pullback(loc.projection, fixed);
        auto pulled_values = ch_deloc(pulled);
        auto sector_map = inertia_orbit_map(loc.projection);
        bool match = pulled_values.values.size() == sector_map.size();
        for (size_t o = 0; match && o < sector_map.size(); ++o)
          match = std::abs(pulled_values.values[o] - fixed_values.values[sector_map[o]]) <= 1e-9;
        c.require(match, name + ": ch_deloc not preserved by the localisation pullback");
      }
    }
  });

  all &= run(6, "weak equivalence algebra", [&](Criterion& c) {
    for (const auto& [name, a] : actions) {
      auto g = action_groupoid(a);
      c.require(is_weak_equivalence(identity_hom(g)).weak, name + ": identity failed");
      if (g->objects() == 0 || g->arrows() > 300) continue;

      // composite of two localisation projections
      std::vector<int> all_objects;
      for (int x = 0; x < g->objects(); ++x) all_objects.push_back(x);
      auto loc1 = localisation(g, {all_objects, {0}});
      std::vector<int> inner;
      for (int x = 0; x < loc1.groupoid->objects(); ++x) inner.push_back(x);
      auto loc2 = localisation(loc1.groupoid, {inner, {0}});
      c.require(is_weak_equivalence(compose_homs(loc2.projection, loc1.projection)).weak,
                name + ": composite of weak equivalences failed");

      // the skeleton inclusion is a strong equivalence; strong implies weak
      if (g->objects() <= 8) {
        auto skeleton = restriction(g, orbits_and_isotropy(*g).representatives);
        auto strong = is_strong_equivalence(skeleton.projection);
        c.require(strong.strong, name + ": skeleton inclusion not strong");
        if (strong.strong) {
          c.require(is_weak_equivalence(skeleton.projection).weak,
                    name + ": strong equivalence failed the weak checker");
          c.require(is_weak_equivalence(*strong.weak_inverse).weak,
                    name + ": weak inverse failed the weak checker");
        }
      }
    }
  });

  all &= run(7, "eigen-structure of random bundles", [&](Criterion& c) {
    std::mt19937_64 rng(0x5EC7);
    std::vector<GroupoidPtr> bases;
    for (const auto& [name, a] : actions)
      if (a.group.order() <= 8 && a.points <= 6) bases.push_back(action_groupoid(a));
    int tested = 0;
    for (int round = 0; tested < 100; ++round) {
      auto g = bases[round % bases.size()];
      auto e = testbundles::random_bundle(g, rng);
      try {
        // verifies completeness, orthogonality, idempotence and rank
        // constancy at 1e-9
        eigenbundle_decomposition(e, 1e-9);
      } catch (const std::exception& ex) {
        c.require(false, std::string("eigen identities: ") + ex.what());
      }
      auto f = testbundles::random_bundle(g, rng);
      auto ce = ch_deloc(e, 1e-9);
      auto cf = ch_deloc(f, 1e-9);
      auto csum = ch_deloc(whitney_sum(e, f), 1e-9);
      auto cprod = ch_deloc(tensor(e, f), 1e-9);
      for (size_t o = 0; o < ce.values.size(); ++o) {
        c.require(std::abs(csum.values[o] - (ce.values[o] + cf.values[o])) <= 1e-9,
                  "ch_deloc additivity");
        c.require(std::abs(cprod.values[o] - ce.values[o] * cf.values[o]) <= 1e-9,
                  "ch_deloc multiplicativity");
      }
      auto orbits = inertia_orbits(*g);
      for (int o = 0; o < orbits.count(); ++o) {
        int loop = orbits.loops.loops[orbits.representatives[o]];
        if (loop == g->unit(g->src(loop)))
          c.require(std::lround(ce.values[o].real()) == e.fiber_dim[g->src(loop)],
                    "rank at an untwisted sector");
      }
      ++tested;
    }
    c.require(tested >= 100, "at least 100 random bundles");
  });

  all &= run(8, "torsor and counting identities", [&](Criterion& c) {
    for (const auto& [name, a] : actions) {
      auto g = action_groupoid(a);
      auto orbits = orbits_and_isotropy(*g);

      int loop_total = 0;
      for (int x = 0; x < g->objects(); ++x) {
        const int iso = orbits.isotropy[orbits.orbit_of[x]].group.order();
        loop_total += iso;
        for (int y : orbits.orbits[orbits.orbit_of[x]])
          c.require(static_cast<int>(g->hom_set(x, y).size()) == iso,
                    name + ": torsor identity failed");
      }
      c.require(loop_space(*g).count() == loop_total, name + ": loop count identity failed");
      c.require(inertia_orbit_count(*g) == oracle::twisted_sector_count(a),
                name + ": sector count differs from the centralizer-orbit formula");
    }
  });

  return all ? 0 : 1;
}
