#include <doctest.h>

#include <cmath>

#include "orb/bundle.hpp"
#include "orb/equivalence.hpp"
#include "orb/errors.hpp"
#include "support/oracles.hpp"

using namespace orb;

namespace {

GroupoidPtr z2pt() { return point_quotient(FiniteGroup::cyclic(2)); }

VectorBundle sign_bundle(GroupoidPtr base) {
  // over point//Z2: the non-identity loop acts by -1
  VectorBundle e;
  e.base = base;
  e.fiber_dim = {1};
  e.action.resize(2);
  e.action[base->unit(0)] = Matrix::Identity(1, 1);
  int sigma = base->unit(0) == 0 ? 1 : 0;
  e.action[sigma] = -Matrix::Identity(1, 1);
  return e;
}

GroupAction z2_swap() {
  GroupAction a;
  a.group = FiniteGroup::cyclic(2);
  a.points = 2;
  a.table = {{0, 1}, {1, 0}};
  return a;
}

}  // namespace

TEST_CASE("bundle validation") {
  auto base = z2pt();
  CHECK_FALSE(bundle_validate(trivial_bundle(base, 1)).has_value());
  CHECK_FALSE(bundle_validate(trivial_bundle(base, 3)).has_value());
  CHECK_FALSE(bundle_validate(sign_bundle(base)).has_value());

  // sigma acting by 2 breaks the group law: sigma^2 would act by 4
  VectorBundle bad = sign_bundle(base);
  bad.action[1] = 2.0 * Matrix::Identity(1, 1);
  auto v = bundle_validate(bad);
  REQUIRE(v.has_value());
  CHECK(v->rule == "composition");

  VectorBundle misshapen = sign_bundle(base);
  misshapen.action[1] = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(bundle_validate(misshapen), InputError);
}

TEST_CASE("goodness") {
  auto base = z2pt();
  CHECK(is_good(trivial_bundle(base, 2)).good);

  auto bad = is_good(sign_bundle(base));
  CHECK_FALSE(bad.good);
  REQUIRE(bad.bad_loops.size() == 1);
  CHECK(bad.bad_loops[0] == 1);

  // any bundle over a free action groupoid is good
  auto free = action_groupoid(z2_swap());
  CHECK(is_good(trivial_bundle(free, 3)).good);
}

TEST_CASE("invariant sections") {
  auto base = z2pt();
  auto sign = sign_bundle(base);
  CHECK(invariant_sections(sign).dimension == 0);
  CHECK(invariant_sections(trivial_bundle(base, 1)).dimension == 1);

  // rank-2 bundle with sigma -> diag(1, -1)
  VectorBundle mixed;
  mixed.base = base;
  mixed.fiber_dim = {2};
  mixed.action.resize(2);
  mixed.action[0] = Matrix::Identity(2, 2);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  mixed.action[1] = d;
  REQUIRE_FALSE(bundle_validate(mixed).has_value());
  auto sections = invariant_sections(mixed);
  CHECK(sections.dimension == 1);

  // the basis sections solve the invariance equation on every arrow
  for (const auto& s : sections.basis)
    for (int a = 0; a < base->arrows(); ++a)
      CHECK((s[base->tgt(a)] - mixed.action[a] * s[base->src(a)]).norm() < 1e-9);
}

TEST_CASE("section dimension matches the averaged trace") {
  auto base = z2pt();
  for (const auto& bundle :
       {trivial_bundle(base, 1), trivial_bundle(base, 4), sign_bundle(base)}) {
    double averaged = oracle::section_dimension_by_averaging(bundle);
    CHECK(std::abs(averaged - invariant_sections(bundle).dimension) < 1e-6);
  }
}

TEST_CASE("whitney sum and tensor") {
  auto base = z2pt();
  auto sign = sign_bundle(base);
  auto triv = trivial_bundle(base, 1);

  auto sum = whitney_sum(triv, sign);
  CHECK(sum.fiber_dim[0] == 2);
  CHECK(sum.action[1](0, 0) == std::complex<double>(1.0));
  CHECK(sum.action[1](1, 1) == std::complex<double>(-1.0));
  CHECK_FALSE(bundle_validate(sum).has_value());

  auto prod = tensor(sign, sign);
  CHECK(prod.fiber_dim[0] == 1);
  CHECK(prod.action[1](0, 0) == std::complex<double>(1.0));  // (-1)(-1)

  auto with_unit = tensor(sign, triv);
  CHECK((with_unit.action[1] - sign.action[1]).norm() < 1e-12);

  auto zero = trivial_bundle(base, 0);
  auto padded = whitney_sum(sign, zero);
  CHECK(padded.fiber_dim[0] == 1);

  for (int x : {0}) {
    (void)x;
    CHECK(sum.fiber_dim[0] == sign.fiber_dim[0] + triv.fiber_dim[0]);
    CHECK(prod.fiber_dim[0] == sign.fiber_dim[0] * sign.fiber_dim[0]);
  }
}

TEST_CASE("pullback") {
  auto base = z2pt();
  auto sign = sign_bundle(base);

  auto same = pullback(identity_hom(base), sign);
  CHECK((same.action[1] - sign.action[1]).norm() == 0.0);

  // pullback along a localisation projection replicates the sign data
  auto g = action_groupoid(z2_swap());
  VectorBundle swap_sign;
  swap_sign.base = g;
  swap_sign.fiber_dim = {1, 1};
  swap_sign.action.assign(4, Matrix::Identity(1, 1));
  swap_sign.action[2] = -Matrix::Identity(1, 1);
  swap_sign.action[3] = -Matrix::Identity(1, 1);
  REQUIRE_FALSE(bundle_validate(swap_sign).has_value());
  auto loc = localisation(g, {{0, 1}, {1}});
  auto pulled = pullback(loc.projection, swap_sign);
  CHECK_FALSE(bundle_validate(pulled).has_value());
  CHECK(pulled.fiber_dim == std::vector<int>{1, 1, 1});
  CHECK(invariant_sections(pulled).dimension == invariant_sections(swap_sign).dimension);
}

TEST_CASE("naturally isomorphic homs give isomorphic pullbacks") {
  // explicit fibrewise isomorphism from the natural-iso components
  auto g = action_groupoid(z2_swap());
  auto pt = unit_groupoid(1);
  GroupoidHom f1{pt, g, {0}, {g->unit(0)}};
  GroupoidHom f2{pt, g, {1}, {g->unit(1)}};
  REQUIRE_FALSE(hom_validate(f1).has_value());
  REQUIRE_FALSE(hom_validate(f2).has_value());
  int connecting = g->hom_set(0, 1).front();
  REQUIRE(natural_iso_check({f1, f2, {connecting}}));

  VectorBundle e;
  e.base = g;
  e.fiber_dim = {2, 2};
  e.action.assign(4, Matrix::Identity(2, 2));
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  e.action[2] = rot;
  e.action[3] = rot.inverse();
  REQUIRE_FALSE(bundle_validate(e).has_value());

  auto p1 = pullback(f1, e);
  auto p2 = pullback(f2, e);
  // the component arrow's action intertwines the two pullbacks
  const Matrix t = e.action[connecting];
  for (int a = 0; a < pt->arrows(); ++a)
    CHECK((t * p1.action[a] - p2.action[a] * t).norm() < 1e-12);
}

TEST_CASE("subbundle from an invariant frame") {
  auto base = z2pt();
  VectorBundle mixed;
  mixed.base = base;
  mixed.fiber_dim = {2};
  mixed.action.resize(2);
  mixed.action[0] = Matrix::Identity(2, 2);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  mixed.action[1] = d;

  auto orbits = orbits_and_isotropy(*base);
  Matrix frame(2, 1);
  frame << 0, 1;  // the sign eigenline
  auto sub = subbundle_from_frames(mixed, orbits, {frame});
  CHECK(sub.fiber_dim[0] == 1);
  CHECK(std::abs(sub.action[1](0, 0) - std::complex<double>(-1.0)) < 1e-12);

  Matrix broken(2, 1);
  broken << 1, 1;  // not invariant
  CHECK_THROWS_AS(subbundle_from_frames(mixed, orbits, {broken}), NumericalError);
}
