#include <doctest.h>

#include <algorithm>
#include <set>

#include "orb/equivalence.hpp"
#include "orb/inertia.hpp"
#include "orb/models.hpp"
#include "support/oracles.hpp"
#include "support/suite.hpp"

using namespace orb;

namespace {

GroupAction z2_swap() {
  GroupAction a;
  a.group = FiniteGroup::cyclic(2);
  a.points = 2;
  a.table = {{0, 1}, {1, 0}};
  return a;
}

GroupAction z2_swap_fix() {
  GroupAction a;
  a.group = FiniteGroup::cyclic(2);
  a.points = 3;
  a.table = {{0, 1, 2}, {1, 0, 2}};
  return a;
}

}  // namespace

TEST_CASE("loop space") {
  auto swap = action_groupoid(z2_swap());
  auto ls1 = loop_space(*swap);
  CHECK(ls1.count() == 2);  // units only, the action is free

  auto s3pt = point_quotient(FiniteGroup::symmetric(3));
  CHECK(loop_space(*s3pt).count() == 6);

  auto ls3 = loop_space(*action_groupoid(z2_swap_fix()));
  CHECK(ls3.count() == 4);  // three units plus the swap fixing r
  for (int x = 0; x < 3; ++x) CHECK(ls3.loop_index[action_groupoid(z2_swap_fix())->unit(x)] >= 0);
}

TEST_CASE("loop count equals the sum of isotropy orders") {
  for (const auto& [name, a] : suite::actions()) {
    CAPTURE(name);
    auto g = action_groupoid(a);
    auto orbits = orbits_and_isotropy(*g);
    int expected = 0;
    for (int x = 0; x < g->objects(); ++x)
      expected += orbits.isotropy[orbits.orbit_of[x]].group.order();
    CHECK(loop_space(*g).count() == expected);
  }
}

TEST_CASE("inertia groupoid of a point quotient") {
  auto z2pt = point_quotient(FiniteGroup::cyclic(2));
  auto inertia = inertia_groupoid(z2pt);
  CHECK(inertia.groupoid->objects() == 2);
  CHECK_FALSE(validate(*inertia.groupoid).has_value());
  CHECK_FALSE(hom_validate(inertia.basepoint).has_value());
  auto orbits = orbits_and_isotropy(*inertia.groupoid);
  CHECK(orbits.count() == 2);
  for (const auto& iso : orbits.isotropy) CHECK(iso.group.order() == 2);

  auto s3 = inertia_groupoid(point_quotient(FiniteGroup::symmetric(3)));
  CHECK(s3.groupoid->objects() == 6);
  CHECK_FALSE(validate(*s3.groupoid).has_value());
  CHECK_FALSE(hom_validate(s3.basepoint).has_value());
  auto s3_orbits = orbits_and_isotropy(*s3.groupoid);
  CHECK(s3_orbits.count() == 3);
  std::multiset<int> iso_orders;
  for (const auto& iso : s3_orbits.isotropy) iso_orders.insert(iso.group.order());
  CHECK(iso_orders == std::multiset<int>{2, 3, 6});

  auto pqr = inertia_groupoid(action_groupoid(z2_swap_fix()));
  CHECK(orbits_and_isotropy(*pqr.groupoid).count() == 3);
}

TEST_CASE("inertia orbit counts") {
  CHECK(inertia_orbit_count(*point_quotient(FiniteGroup::symmetric(3))) == 3);
  CHECK(inertia_orbit_count(*action_groupoid(z2_swap())) == 1);
  CHECK(inertia_orbit_count(*action_groupoid(cone_point_model(3))) == 4);

  // light and full constructions agree
  for (const auto& [name, a] : suite::actions()) {
    CAPTURE(name);
    auto g = action_groupoid(a);
    if (g->arrows() > 80) continue;
    auto full = inertia_groupoid(g);
    CHECK(inertia_orbit_count(*g) == orbits_and_isotropy(*full.groupoid).count());
  }
}

TEST_CASE("inertia decomposition of point quotients") {
  auto dec = inertia_decomposition(trivial_action(FiniteGroup::symmetric(3), 1));
  REQUIRE(dec.components.size() == 3);
  std::multiset<int> orders;
  for (const auto& z : dec.centralizers) orders.insert(z.group.order());
  CHECK(orders == std::multiset<int>{2, 3, 6});
  for (const auto& f : dec.fixed_points) CHECK(f.size() == 1);
  CHECK(dec.certificate.weak);
}

TEST_CASE("inertia decomposition of the trivial group action") {
  auto dec = inertia_decomposition(trivial_action(FiniteGroup::trivial(), 5));
  REQUIRE(dec.components.size() == 1);
  CHECK(dec.components[0].points == 5);
  CHECK(inertia_orbit_count(*dec.base) == 5);
  CHECK(dec.certificate.weak);
}

TEST_CASE("inertia decomposition of swap-and-fix") {
  auto dec = inertia_decomposition(z2_swap_fix());
  REQUIRE(dec.components.size() == 2);
  CHECK(dec.components[0].points == 3);  // M^e = everything
  CHECK(dec.components[1].points == 1);  // M^sigma = {r}
  int total_orbits = 0;
  for (const auto& comp : dec.components)
    total_orbits += orbits_and_isotropy(*action_groupoid(comp)).count();
  CHECK(total_orbits == 3);
  CHECK(total_orbits == inertia_orbit_count(*dec.base));
  CHECK(dec.certificate.weak);
}

TEST_CASE("burnside-style sector count matches the decomposition") {
  for (const auto& [name, a] : suite::actions()) {
    CAPTURE(name);
    CHECK(inertia_orbit_count(*action_groupoid(a)) == oracle::twisted_sector_count(a));
  }
}

TEST_CASE("free actions have inertia isomorphic to the base") {
  auto g = action_groupoid(z2_swap());
  auto inertia = inertia_groupoid(g);
  CHECK(inertia.groupoid->objects() == g->objects());
  auto strong = is_strong_equivalence(inertia.basepoint);
  CHECK(strong.strong);
}

TEST_CASE("centralizer isotropy check") {
  CHECK(centralizer_isotropy_check(*point_quotient(FiniteGroup::symmetric(3))).ok);
  CHECK(centralizer_isotropy_check(*point_quotient(FiniteGroup::symmetric(4))).ok);
  CHECK(centralizer_isotropy_check(*action_groupoid(z2_swap_fix())).ok);
  for (const auto& [name, a] : suite::actions()) {
    CAPTURE(name);
    auto g = action_groupoid(a);
    if (g->arrows() > 100) continue;
    CHECK(centralizer_isotropy_check(*g).ok);
  }
}

TEST_CASE("inertia isotropy at a transposition of S3 is the centralizer") {
  auto s3pt = point_quotient(FiniteGroup::symmetric(3));
  auto inertia = inertia_groupoid(s3pt);
  auto orbits = orbits_and_isotropy(*inertia.groupoid);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  // find the inertia object of a transposition loop (element order 2)
  for (int l = 0; l < inertia.loops.count(); ++l) {
    int elt = inertia.loops.loops[l];  // arrow id = group element for a point quotient
    if (s3.element_order(elt) == 2) {
      CHECK(orbits.isotropy[orbits.orbit_of[l]].group.order() == 2);
    }
    if (elt == 0) {
      CHECK(orbits.isotropy[orbits.orbit_of[l]].group.order() == 6);
    }
  }
}

TEST_CASE("inertia orbit count is invariant under localisation") {
  for (const auto& [name, a] : suite::actions()) {
    CAPTURE(name);
    auto g = action_groupoid(a);
    if (g->objects() < 2 || g->arrows() > 60) continue;
    std::vector<int> all;
    for (int x = 0; x < g->objects(); ++x) all.push_back(x);
    auto loc = localisation(g, {all, {0, g->objects() - 1}});
    CHECK(inertia_orbit_count(*g) == inertia_orbit_count(*loc.groupoid));
  }
}

TEST_CASE("inertia orbit map follows a weak equivalence") {
  auto g = action_groupoid(z2_swap_fix());
  std::vector<int> all{0, 1, 2};
  auto loc = localisation(g, {all, {2}});
  auto map = inertia_orbit_map(loc.projection);
  CHECK(static_cast<int>(map.size()) == inertia_orbit_count(*loc.groupoid));
  // a weak equivalence induces a bijection of twisted sectors
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  CHECK(static_cast<int>(sorted.size()) == inertia_orbit_count(*g));
}
