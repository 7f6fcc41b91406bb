#include "orb/inertia.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "orb/errors.hpp"

namespace orb {

LoopSpace loop_space(const Groupoid& g) {
  LoopSpace s;
  s.loop_index.assign(g.arrows(), -1);
  for (int a = 0; a < g.arrows(); ++a)
    if (g.src(a) == g.tgt(a)) {
      s.loop_index[a] = s.count();
      s.loops.push_back(a);
      s.base.push_back(g.src(a));
    }
  return s;
}

InertiaGroupoid inertia_groupoid(GroupoidPtr g) {
  InertiaGroupoid out;
  out.loops = loop_space(*g);
  const LoopSpace& ls = out.loops;

  Groupoid::Tables t;
  t.objects = ls.count();
  std::unordered_map<std::uint64_t, int> index;  // (acting arrow, source loop) -> arrow id
  auto key = [](int d, int l) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(d)) << 32) |
           static_cast<std::uint32_t>(l);
  };
  for (int l = 0; l < ls.count(); ++l)
    for (int d : g->arrows_from(ls.base[l])) {
      int a = static_cast<int>(t.src.size());
      index[key(d, l)] = a;
      out.arrow_labels.emplace_back(d, l);
      t.src.push_back(l);
      t.tgt.push_back(ls.loop_index[g->conjugate(d, ls.loops[l])]);
    }
  const int arrows = static_cast<int>(t.src.size());
  t.inverse.resize(arrows);
  for (int a = 0; a < arrows; ++a) {
    auto [d, l] = out.arrow_labels[a];
    t.inverse[a] = index.at(key(g->inverse(d), t.tgt[a]));
  }
  t.unit.resize(t.objects);
  for (int l = 0; l < ls.count(); ++l) t.unit[l] = index.at(key(g->unit(ls.base[l]), l));
  std::vector<std::vector<int>> starting(t.objects);
  for (int a = 0; a < arrows; ++a) starting[t.src[a]].push_back(a);
  for (int a = 0; a < arrows; ++a)
    for (int b : starting[t.tgt[a]]) {
      auto [d1, l1] = out.arrow_labels[a];
      int d2 = out.arrow_labels[b].first;
      t.compositions.push_back({a, b, index.at(key(g->compose(d1, d2), l1))});
    }

  out.groupoid = Groupoid::from_tables(std::move(t));
  out.basepoint.dom = out.groupoid;
  out.basepoint.cod = g;
  out.basepoint.obj_map = ls.base;
  out.basepoint.arr_map.reserve(arrows);
  for (auto [d, l] : out.arrow_labels) out.basepoint.arr_map.push_back(d);
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

InertiaOrbits inertia_orbits(const Groupoid& g) {
  InertiaOrbits out;
  out.loops = loop_space(g);
  const LoopSpace& ls = out.loops;
  UnionFind uf(ls.count());
  for (int l = 0; l < ls.count(); ++l)
    for (int d : g.arrows_from(ls.base[l]))
      uf.merge(l, ls.loop_index[g.conjugate(d, ls.loops[l])]);
  out.orbit_of.assign(ls.count(), -1);
  std::vector<int> orbit_index(ls.count(), -1);
  for (int l = 0; l < ls.count(); ++l) {
    int root = uf.find(l);
    if (orbit_index[root] < 0) {
      orbit_index[root] = out.count();
      out.representatives.push_back(l);
    }
    out.orbit_of[l] = orbit_index[root];
  }
  return out;
}

int inertia_orbit_count(const Groupoid& g) { return inertia_orbits(g).count(); }

InertiaDecomposition inertia_decomposition(const GroupAction& a) {
  a.validate();
  InertiaDecomposition out;
  out.base = action_groupoid(a);
  out.inertia = inertia_groupoid(out.base);

  const FiniteGroup& G = a.group;
  auto classes = conjugacy_classes(G);

  std::vector<GroupoidPtr> component_groupoids;
  for (int rep : classes.representatives) {
    out.class_representatives.push_back(rep);
    Subgroup z = centralizer(G, rep);

    std::vector<int> fixed;
    for (int x = 0; x < a.points; ++x)
      if (a.act(rep, x) == x) fixed.push_back(x);

    GroupAction comp;
    comp.group = z.group;
    comp.points = static_cast<int>(fixed.size());
    comp.table.assign(z.group.order(), std::vector<int>(comp.points));
    std::vector<int> pos(a.points, -1);
    for (size_t i = 0; i < fixed.size(); ++i) pos[fixed[i]] = static_cast<int>(i);
    for (int zi = 0; zi < z.group.order(); ++zi)
      for (size_t i = 0; i < fixed.size(); ++i) {
        int image = a.act(z.embedding[zi], fixed[i]);
        // z fixes M^g setwise because z commutes with the representative
        if (pos[image] < 0) throw InternalCheckError("centralizer left the fixed-point set");
        comp.table[zi][i] = pos[image];
      }
    out.centralizers.push_back(std::move(z));
    out.fixed_points.push_back(std::move(fixed));
    component_groupoids.push_back(action_groupoid(comp));
    out.components.push_back(std::move(comp));
  }
  out.decomposition = disjoint_union(component_groupoids);

  // comparison homomorphism: component of g sends a point x of M^g to the
  // loop (g, x), and an acting arrow (z, x) to the inertia arrow given by the
  // base arrow (z, x) acting on that loop.
  std::unordered_map<std::uint64_t, int> inertia_arrow;  // (acting arrow, loop) -> arrow id
  for (size_t i = 0; i < out.inertia.arrow_labels.size(); ++i) {
    auto [d, l] = out.inertia.arrow_labels[i];
    inertia_arrow[(static_cast<std::uint64_t>(d) << 32) | static_cast<std::uint32_t>(l)] =
        static_cast<int>(i);
  }

  GroupoidHom phi;
  phi.dom = out.decomposition;
  phi.cod = out.inertia.groupoid;
  const int npoints = a.points;
  for (size_t c = 0; c < out.components.size(); ++c) {
    const int g_rep = out.class_representatives[c];
    const auto& fixed = out.fixed_points[c];
    const auto& z = out.centralizers[c];
    for (int x : fixed) {
      int loop_arrow = g_rep * npoints + x;  // base arrow (g, x), a loop since g fixes x
      phi.obj_map.push_back(out.inertia.loops.loop_index[loop_arrow]);
    }
    for (int zi = 0; zi < z.group.order(); ++zi)
      for (size_t i = 0; i < fixed.size(); ++i) {
        int acting = z.embedding[zi] * npoints + fixed[i];
        int loop = out.inertia.loops.loop_index[g_rep * npoints + fixed[i]];
        phi.arr_map.push_back(inertia_arrow.at((static_cast<std::uint64_t>(acting) << 32) |
                                               static_cast<std::uint32_t>(loop)));
      }
  }
  if (auto v = hom_validate(phi))
    throw InternalCheckError("inertia decomposition comparison invalid: " + v->rule + ": " +
                             v->detail);
  out.comparison = std::move(phi);
  out.certificate = is_weak_equivalence(out.comparison);
  if (!out.certificate.weak)
    throw InternalCheckError("inertia decomposition comparison failed the weak equivalence check: " +
                             out.certificate.failure->condition);
  return out;
}

std::vector<int> inertia_orbit_map(const GroupoidHom& f) {
  auto dom = inertia_orbits(*f.dom);
  auto cod = inertia_orbits(*f.cod);
  std::vector<int> map(dom.count(), -1);
  for (int l = 0; l < dom.loops.count(); ++l) {
    int image = f.arr_map[dom.loops.loops[l]];
    int cod_loop = cod.loops.loop_index[image];
    if (cod_loop < 0) throw InternalCheckError("homomorphism image of a loop is not a loop");
    map[dom.orbit_of[l]] = cod.orbit_of[cod_loop];
  }
  return map;
}

CentralizerCheck centralizer_isotropy_check(const Groupoid& g) {
  auto ls = loop_space(g);
  for (int l = 0; l < ls.count(); ++l) {
    const int loop = ls.loops[l];
    const int x = ls.base[l];
    std::vector<int> commuting;
    for (int d : g.loops_at(x))
      if (g.compose(d, loop) == g.compose(loop, d)) commuting.push_back(d);
    std::vector<int> stabilizing;
    for (int d : g.arrows_from(x))
      if (g.conjugate(d, loop) == loop) stabilizing.push_back(d);
    std::sort(commuting.begin(), commuting.end());
    std::sort(stabilizing.begin(), stabilizing.end());
    if (commuting != stabilizing) {
      CentralizerCheck fail;
      fail.ok = false;
      fail.loop = l;
      fail.detail = "inertia isotropy at loop " + std::to_string(l) +
                    " is not the centralizer of the loop";
      return fail;
    }
  }
  return {};
}

}  // namespace orb
