#include <doctest.h>

#include <set>

#include "orb/errors.hpp"
#include "orb/finite_group.hpp"
#include "support/oracles.hpp"

using namespace orb;

namespace {

std::vector<std::vector<int>> table_of(const FiniteGroup& g) {
  std::vector<std::vector<int>> t(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) t[a][b] = g.mul(a, b);
  return t;
}

FiniteGroup klein_four() {
  return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
}

std::vector<FiniteGroup> group_zoo() {
  std::vector<FiniteGroup> zoo;
  for (int n : {1, 2, 3, 4, 5, 6, 8}) zoo.push_back(FiniteGroup::cyclic(n));
  zoo.push_back(klein_four());
  zoo.push_back(FiniteGroup::symmetric(3));
  zoo.push_back(FiniteGroup::symmetric(4));
  zoo.push_back(FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {3, 2, 1, 0}}));  // dihedral
  return zoo;
}

}  // namespace

TEST_CASE("permutation closure") {
  // oracle: brute-force closure of the generating permutations
  CHECK(oracle::closure_order(3, {{1, 0, 2}, {1, 2, 0}}) == 6);
  auto s3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(s3.order() == 6);
  CHECK(s3.has_permutations());

  CHECK(oracle::closure_order(4, {{1, 2, 3, 0}}) == 4);
  auto c4 = FiniteGroup::from_permutations(4, {{1, 2, 3, 0}});
  CHECK(c4.order() == 4);

  auto trivial = FiniteGroup::from_permutations(1, {});
  CHECK(trivial.order() == 1);

  CHECK_THROWS_AS(FiniteGroup::from_permutations(3, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(FiniteGroup::from_permutations(2, {{0, 1, 2}}), InputError);
}

TEST_CASE("permutation record is faithful") {
  auto s3 = FiniteGroup::symmetric(3);
  for (int a = 0; a < s3.order(); ++a)
    for (int b = 0; b < s3.order(); ++b) {
      const auto& pa = s3.permutation(a);
      const auto& pb = s3.permutation(b);
      for (int x = 0; x < 3; ++x) CHECK(s3.permutation(s3.mul(a, b))[x] == pa[pb[x]]);
    }
}

TEST_CASE("cyclic groups") {
  auto z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(conjugacy_classes(z3).classes.size() == 3);
  CHECK(FiniteGroup::cyclic(1).order() == 1);
  CHECK(FiniteGroup::cyclic(6).element_order(2) == 3);
  CHECK_THROWS_AS(FiniteGroup::cyclic(0), InputError);
}

TEST_CASE("multiplication table validation") {
  CHECK_THROWS_AS(FiniteGroup::from_multiplication_table({{0, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::from_multiplication_table({{1, 0}, {0, 1}}), ValidationError);
  // Z2 round trip
  auto z2 = FiniteGroup::from_multiplication_table({{0, 1}, {1, 0}});
  CHECK(z2.inverse(1) == 1);
}

TEST_CASE("conjugacy classes") {
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(oracle::conjugacy_class_sizes(table_of(s3)) == std::vector<int>{1, 2, 3});
  auto data = conjugacy_classes(s3);
  std::vector<int> sizes;
  for (const auto& c : data.classes) sizes.push_back(static_cast<int>(c.size()));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{1, 2, 3});
  CHECK(data.representatives[0] == 0);

  CHECK(conjugacy_classes(FiniteGroup::cyclic(4)).classes.size() == 4);
  CHECK(conjugacy_classes(FiniteGroup::trivial()).classes.size() == 1);
}

TEST_CASE("conjugacy class representatives are least and classes partition") {
  for (const auto& g : group_zoo()) {
    auto data = conjugacy_classes(g);
    int total = 0;
    for (size_t c = 0; c < data.classes.size(); ++c) {
      total += static_cast<int>(data.classes[c].size());
      CHECK(data.representatives[c] == data.classes[c].front());
      CHECK(g.order() % static_cast<int>(data.classes[c].size()) == 0);
      for (int x : data.classes[c])
        for (int h = 0; h < g.order(); ++h)
          CHECK(data.class_of[g.conjugate(h, x)] == static_cast<int>(c));
    }
    CHECK(total == g.order());
  }
}

TEST_CASE("centralizer") {
  auto s3 = FiniteGroup::symmetric(3);
  int transposition = -1;
  for (int x = 1; x < 6; ++x)
    if (s3.element_order(x) == 2) {
      transposition = x;
      break;
    }
  REQUIRE(transposition > 0);
  CHECK(oracle::commuting_count(table_of(s3), transposition) == 2);
  auto z = centralizer(s3, transposition);
  CHECK(z.group.order() == 2);
  CHECK(z.embedding[0] == 0);

  CHECK(centralizer(s3, 0).group.order() == 6);
  auto z5 = FiniteGroup::cyclic(5);
  for (int x = 0; x < 5; ++x) CHECK(centralizer(z5, x).group.order() == 5);
  CHECK_THROWS_AS(centralizer(s3, 17), InputError);
}

TEST_CASE("orbit-stabilizer identity") {
  for (const auto& g : group_zoo()) {
    auto classes = conjugacy_classes(g);
    for (int x = 0; x < g.order(); ++x) {
      int class_size = static_cast<int>(classes.classes[classes.class_of[x]].size());
      CHECK(centralizer(g, x).group.order() * class_size == g.order());
    }
  }
}

TEST_CASE("cyclic subgroups") {
  auto z4 = FiniteGroup::cyclic(4);
  auto subs4 = cyclic_subgroups(z4);
  REQUIRE(subs4.size() == 3);
  CHECK(subs4[0].group.order() == 1);
  CHECK(subs4[1].group.order() == 2);
  CHECK(subs4[2].group.order() == 4);

  auto s3 = FiniteGroup::symmetric(3);
  // oracle: distinct generated subgroups of S3
  auto expected = oracle::generated_cyclic_subgroups(table_of(s3));
  CHECK(expected.size() == 5);
  auto subs = cyclic_subgroups(s3);
  REQUIRE(subs.size() == 5);
  std::multiset<int> orders;
  for (const auto& s : subs) orders.insert(s.group.order());
  CHECK(orders == std::multiset<int>{1, 2, 2, 2, 3});
  for (const auto& s : subs) CHECK(expected.count(s.embedding) == 1);

  CHECK(cyclic_subgroups(FiniteGroup::trivial()).size() == 1);
}

TEST_CASE("subgroup embeddings compose with the parent law") {
  for (const auto& g : group_zoo())
    for (const auto& sub : cyclic_subgroups(g))
      for (int a = 0; a < sub.group.order(); ++a)
        for (int b = 0; b < sub.group.order(); ++b)
          CHECK(sub.embedding[sub.group.mul(a, b)] ==
                g.mul(sub.embedding[a], sub.embedding[b]));
}

TEST_CASE("left cosets partition the group") {
  auto s4 = FiniteGroup::symmetric(4);
  for (const auto& sub : cyclic_subgroups(s4)) {
    auto cosets = left_cosets(s4, sub);
    CHECK(static_cast<int>(cosets.size()) * sub.group.order() == s4.order());
    std::set<int> seen;
    for (const auto& c : cosets)
      for (int e : c) CHECK(seen.insert(e).second);
    CHECK(static_cast<int>(seen.size()) == s4.order());
  }
}

TEST_CASE("isomorphism testing") {
  auto z4 = FiniteGroup::cyclic(4);
  CHECK_FALSE(are_isomorphic(z4, klein_four()));
  CHECK(are_isomorphic(z4, z4));
  CHECK_FALSE(are_isomorphic(FiniteGroup::symmetric(3), FiniteGroup::cyclic(6)));

  // two presentations of the same group
  auto z2z2_perm = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  CHECK(are_isomorphic(klein_four(), z2z2_perm));

  auto witness = find_isomorphism(FiniteGroup::symmetric(3),
                                  FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}}));
  REQUIRE(witness.has_value());

  CHECK_THROWS_AS(are_isomorphic(FiniteGroup::cyclic(65), FiniteGroup::cyclic(65)),
                  CapabilityError);
}

TEST_CASE("isomorphism is reflexive and symmetric on the zoo") {
  auto zoo = group_zoo();
  for (const auto& g : zoo) CHECK(are_isomorphic(g, g));
  for (const auto& a : zoo)
    for (const auto& b : zoo) CHECK(are_isomorphic(a, b) == are_isomorphic(b, a));
}

TEST_CASE("isomorphism witnesses preserve multiplication") {
  auto a = FiniteGroup::symmetric(4);
  auto b = FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
  auto map = find_isomorphism(a, b);
  REQUIRE(map.has_value());
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      CHECK((*map)[a.mul(x, y)] == b.mul((*map)[x], (*map)[y]));
}
