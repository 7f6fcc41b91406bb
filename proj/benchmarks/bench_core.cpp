#include <benchmark/benchmark.h>

#include "orb/chern.hpp"
#include "orb/equivalence.hpp"
#include "orb/inertia.hpp"

namespace {

using namespace orb;

GroupAction s4_coset_action() {
  auto s4 = FiniteGroup::symmetric(4);
  for (const auto& sub : cyclic_subgroups(s4))
    if (sub.group.order() == 2) return coset_action(s4, sub);
  throw std::logic_error("no order-2 subgroup in S4");
}

void BM_inertia_decomposition(benchmark::State& state) {
  auto action = s4_coset_action();
  for (auto _ : state) {
    auto dec = inertia_decomposition(action);
    benchmark::DoNotOptimize(dec.certificate.weak);
  }
}
BENCHMARK(BM_inertia_decomposition);

void BM_weak_equivalence_of_localisation(benchmark::State& state) {
  auto g = action_groupoid(s4_coset_action());
  std::vector<int> all;
  for (int x = 0; x < g->objects(); ++x) all.push_back(x);
  auto loc = localisation(g, {all, {0, 1, 2}});
  for (auto _ : state) {
    auto report = is_weak_equivalence(loc.projection);
    benchmark::DoNotOptimize(report.weak);
  }
}
BENCHMARK(BM_weak_equivalence_of_localisation);

void BM_rank_check_point_s4(benchmark::State& state) {
  auto g = point_quotient(FiniteGroup::symmetric(4));
  for (auto _ : state) {
    auto check = ch_deloc_rank_check(g);
    benchmark::DoNotOptimize(check.pass);
  }
}
BENCHMARK(BM_rank_check_point_s4);

void BM_morita_signature(benchmark::State& state) {
  auto g = action_groupoid(s4_coset_action());
  std::vector<int> all;
  for (int x = 0; x < g->objects(); ++x) all.push_back(x);
  auto loc = localisation(g, {all, all});
  for (auto _ : state) {
    auto sig = morita_signature(*loc.groupoid);
    benchmark::DoNotOptimize(sig.classes.size());
  }
}
BENCHMARK(BM_morita_signature);

}  // namespace
