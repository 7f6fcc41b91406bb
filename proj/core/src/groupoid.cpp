#include "orb/groupoid.hpp"

#include <algorithm>
#include <numeric>

#include "orb/errors.hpp"

namespace orb {

namespace {

inline std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupAction

void GroupAction::validate() const {
  const int n = group.order();
  if (static_cast<int>(table.size()) != n) throw InputError("action table must have one row per group element");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != points) throw InputError("action table row has wrong length");
    for (int v : row)
      if (v < 0 || v >= points) throw InputError("action table entry out of range");
  }
  for (int x = 0; x < points; ++x)
    if (act(0, x) != x) throw InputError("identity does not act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < points; ++x)
        if (act(g, act(h, x)) != act(group.mul(g, h), x))
          throw InputError("action is not compatible with the group law");
}

GroupAction trivial_action(FiniteGroup g, int points) {
  GroupAction a;
  a.points = points;
  std::vector<int> row(points);
  std::iota(row.begin(), row.end(), 0);
  a.table.assign(g.order(), row);
  a.group = std::move(g);
  return a;
}

GroupAction regular_action(const FiniteGroup& g) {
  GroupAction a;
  a.group = g;
  a.points = g.order();
  a.table.assign(g.order(), std::vector<int>(g.order()));
  for (int h = 0; h < g.order(); ++h)
    for (int x = 0; x < g.order(); ++x) a.table[h][x] = g.mul(h, x);
  return a;
}

GroupAction coset_action(const FiniteGroup& g, const Subgroup& sub) {
  auto cosets = left_cosets(g, sub);
  std::vector<int> coset_of(g.order(), -1);
  for (size_t i = 0; i < cosets.size(); ++i)
    for (int e : cosets[i]) coset_of[e] = static_cast<int>(i);
  GroupAction a;
  a.group = g;
  a.points = static_cast<int>(cosets.size());
  a.table.assign(g.order(), std::vector<int>(a.points));
  for (int h = 0; h < g.order(); ++h)
    for (int i = 0; i < a.points; ++i) a.table[h][i] = coset_of[g.mul(h, cosets[i].front())];
  return a;
}

GroupAction natural_action(const FiniteGroup& g) {
  if (!g.has_permutations()) throw InputError("natural_action requires a permutation record");
  GroupAction a;
  a.group = g;
  a.points = g.degree();
  a.table.resize(g.order());
  for (int h = 0; h < g.order(); ++h) a.table[h] = g.permutation(h);
  return a;
}

GroupAction combine_actions(const std::vector<GroupAction>& parts) {
  if (parts.empty()) throw InputError("combine_actions needs at least one part");
  const FiniteGroup& g = parts.front().group;
  for (const auto& p : parts)
    if (p.group.order() != g.order() ||
        p.group.multiplication_table_flat() != g.multiplication_table_flat())
      throw InputError("combine_actions requires identical groups");
  GroupAction a;
  a.group = g;
  a.points = 0;
  a.table.assign(g.order(), {});
  for (const auto& p : parts) {
    for (int h = 0; h < g.order(); ++h)
      for (int x = 0; x < p.points; ++x) a.table[h].push_back(a.points + p.act(h, x));
    a.points += p.points;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Groupoid core

class GroupoidBuilder {
 public:
  static GroupoidPtr build(Groupoid::Tables t) {
    auto g = std::shared_ptr<Groupoid>(new Groupoid());
    g->objects_ = t.objects;
    g->src_ = t.src;
    g->tgt_ = t.tgt;
    g->unit_ = t.unit;
    g->inverse_ = t.inverse;
    g->comp_.reserve(t.compositions.size() * 2);
    for (const auto& c : t.compositions) g->comp_[pair_key(c[0], c[1])] = c[2];
    g->out_.assign(t.objects, {});
    g->in_.assign(t.objects, {});
    const int m = static_cast<int>(t.src.size());
    for (int a = 0; a < m; ++a) {
      g->out_[t.src[a]].push_back(a);
      g->in_[t.tgt[a]].push_back(a);
    }
    g->tables_ = std::move(t);
    return g;
  }
};

GroupoidPtr Groupoid::from_tables(Tables t) {
  const int m = static_cast<int>(t.src.size());
  if (static_cast<int>(t.tgt.size()) != m || static_cast<int>(t.inverse.size()) != m)
    throw InputError("arrow table lengths disagree");
  if (static_cast<int>(t.unit.size()) != t.objects) throw InputError("unit table length disagrees with object count");
  auto in_range = [](int v, int n) { return v >= 0 && v < n; };
  for (int a = 0; a < m; ++a)
    if (!in_range(t.src[a], t.objects) || !in_range(t.tgt[a], t.objects) ||
        !in_range(t.inverse[a], m))
      throw InputError("arrow table entry out of range");
  for (int x = 0; x < t.objects; ++x)
    if (!in_range(t.unit[x], m)) throw InputError("unit table entry out of range");
  for (const auto& c : t.compositions)
    if (!in_range(c[0], m) || !in_range(c[1], m) || !in_range(c[2], m))
      throw InputError("composition entry out of range");
  return GroupoidBuilder::build(std::move(t));
}

std::optional<int> Groupoid::compose_opt(int a, int b) const {
  auto it = comp_.find(pair_key(a, b));
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

int Groupoid::compose(int a, int b) const {
  auto r = compose_opt(a, b);
  if (!r)
    throw InternalCheckError("composition undefined for arrows " + std::to_string(a) + ", " +
                             std::to_string(b));
  return *r;
}

int Groupoid::conjugate(int by, int loop) const {
  return compose(compose(inverse(by), loop), by);
}

std::vector<int> Groupoid::hom_set(int x, int y) const {
  std::vector<int> r;
  for (int a : out_[x])
    if (tgt_[a] == y) r.push_back(a);
  return r;
}

std::vector<int> Groupoid::loops_at(int x) const { return hom_set(x, x); }

// ---------------------------------------------------------------------------
// Validation

std::optional<GroupoidViolation> validate(const Groupoid& g) {
  const Groupoid::Tables& t = g.tables();
  const int m = g.arrows();

  for (int x = 0; x < g.objects(); ++x) {
    int u = g.unit(x);
    if (g.src(u) != x || g.tgt(u) != x)
      return GroupoidViolation{"unit-typing", {u}, "unit arrow of object " + std::to_string(x) +
                                                       " is not a loop at it"};
  }
  for (int a = 0; a < m; ++a) {
    int i = g.inverse(a);
    if (g.src(i) != g.tgt(a) || g.tgt(i) != g.src(a))
      return GroupoidViolation{"inverse-typing", {a, i}, "inverse arrow has wrong endpoints"};
  }

  // Declared compositions must be well-typed and unambiguous.
  std::unordered_map<std::uint64_t, int> seen;
  for (const auto& c : t.compositions) {
    if (g.tgt(c[0]) != g.src(c[1]))
      return GroupoidViolation{"composition-typing", {c[0], c[1]},
                               "composition declared for a non-composable pair"};
    if (g.src(c[2]) != g.src(c[0]) || g.tgt(c[2]) != g.tgt(c[1]))
      return GroupoidViolation{"composition-endpoints", {c[0], c[1], c[2]},
                               "composite has wrong endpoints"};
    auto [it, fresh] = seen.emplace(pair_key(c[0], c[1]), c[2]);
    if (!fresh && it->second != c[2])
      return GroupoidViolation{"composition-conflict", {c[0], c[1]},
                               "pair composed twice with different results"};
  }
  // ... and total on composable pairs.
  for (int a = 0; a < m; ++a)
    for (int b : g.arrows_from(g.tgt(a)))
      if (!g.compose_opt(a, b))
        return GroupoidViolation{"composition-missing", {a, b},
                                 "composable pair has no declared composite"};

  for (int a = 0; a < m; ++a) {
    if (g.compose(g.unit(g.src(a)), a) != a || g.compose(a, g.unit(g.tgt(a))) != a)
      return GroupoidViolation{"unit-law", {a}, "unit arrows are not two-sided identities"};
    if (g.compose(a, g.inverse(a)) != g.unit(g.src(a)) ||
        g.compose(g.inverse(a), a) != g.unit(g.tgt(a)))
      return GroupoidViolation{"inverse-law", {a}, "inverse arrow is not a two-sided inverse"};
  }

  for (int a = 0; a < m; ++a)
    for (int b : g.arrows_from(g.tgt(a))) {
      int ab = g.compose(a, b);
      for (int c : g.arrows_from(g.tgt(b)))
        if (g.compose(ab, c) != g.compose(a, g.compose(b, c)))
          return GroupoidViolation{"associativity", {a, b, c}, "associativity fails"};
    }

  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

GroupoidPtr unit_groupoid(int n_objects) {
  Groupoid::Tables t;
  t.objects = n_objects;
  t.src.resize(n_objects);
  t.tgt.resize(n_objects);
  t.unit.resize(n_objects);
  t.inverse.resize(n_objects);
  for (int x = 0; x < n_objects; ++x) {
    t.src[x] = t.tgt[x] = x;
    t.unit[x] = x;
    t.inverse[x] = x;
    t.compositions.push_back({x, x, x});
  }
  return GroupoidBuilder::build(std::move(t));
}

GroupoidPtr action_groupoid(const GroupAction& a) {
  a.validate();
  const int n = a.group.order(), p = a.points;
  auto id = [p](int g, int x) { return g * p + x; };
  Groupoid::Tables t;
  t.objects = p;
  t.src.resize(static_cast<size_t>(n) * p);
  t.tgt.resize(static_cast<size_t>(n) * p);
  t.inverse.resize(static_cast<size_t>(n) * p);
  t.unit.resize(p);
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < p; ++x) {
      t.src[id(g, x)] = x;
      t.tgt[id(g, x)] = a.act(g, x);
      t.inverse[id(g, x)] = id(a.group.inverse(g), a.act(g, x));
    }
  for (int x = 0; x < p; ++x) t.unit[x] = id(0, x);
  t.compositions.reserve(static_cast<size_t>(n) * n * p);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < p; ++x)
        t.compositions.push_back({id(g, x), id(h, a.act(g, x)), id(a.group.mul(h, g), x)});
  return GroupoidBuilder::build(std::move(t));
}

GroupoidPtr point_quotient(const FiniteGroup& g) {
  return action_groupoid(trivial_action(g, 1));
}

GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts) {
  Groupoid::Tables t;
  int obj_off = 0, arr_off = 0;
  for (const auto& part : parts) {
    for (int a = 0; a < part->arrows(); ++a) {
      t.src.push_back(part->src(a) + obj_off);
      t.tgt.push_back(part->tgt(a) + obj_off);
      t.inverse.push_back(part->inverse(a) + arr_off);
    }
    for (int x = 0; x < part->objects(); ++x) t.unit.push_back(part->unit(x) + arr_off);
    for (const auto& c : part->tables().compositions)
      t.compositions.push_back({c[0] + arr_off, c[1] + arr_off, c[2] + arr_off});
    obj_off += part->objects();
    arr_off += part->arrows();
  }
  t.objects = obj_off;
  return GroupoidBuilder::build(std::move(t));
}

GroupoidHom identity_hom(GroupoidPtr g) {
  GroupoidHom f;
  f.dom = g;
  f.cod = g;
  f.obj_map.resize(g->objects());
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  f.arr_map.resize(g->arrows());
  std::iota(f.arr_map.begin(), f.arr_map.end(), 0);
  return f;
}

GroupoidHom compose_homs(const GroupoidHom& f, const GroupoidHom& g) {
  if (f.cod != g.dom) throw InputError("compose_homs: middle groupoids differ");
  GroupoidHom r;
  r.dom = f.dom;
  r.cod = g.cod;
  r.obj_map.resize(f.obj_map.size());
  r.arr_map.resize(f.arr_map.size());
  for (size_t i = 0; i < f.obj_map.size(); ++i) r.obj_map[i] = g.obj_map[f.obj_map[i]];
  for (size_t i = 0; i < f.arr_map.size(); ++i) r.arr_map[i] = g.arr_map[f.arr_map[i]];
  return r;
}

InducedGroupoid induced_groupoid(GroupoidPtr g, const std::vector<int>& object_map) {
  const int m = static_cast<int>(object_map.size());
  for (int v : object_map)
    if (v < 0 || v >= g->objects()) throw InputError("induced_groupoid: object map out of range");

  InducedGroupoid out;
  Groupoid::Tables t;
  t.objects = m;
  std::unordered_map<std::uint64_t, int> index;  // (mi, mj, base arrow) -> arrow id
  auto key = [m](int mi, int mj, int c) {
    return (static_cast<std::uint64_t>(mi) * m + mj) << 32 | static_cast<std::uint32_t>(c);
  };
  for (int mi = 0; mi < m; ++mi)
    for (int mj = 0; mj < m; ++mj)
      for (int c : g->hom_set(object_map[mi], object_map[mj])) {
        int a = static_cast<int>(t.src.size());
        index[key(mi, mj, c)] = a;
        t.src.push_back(mi);
        t.tgt.push_back(mj);
        out.arrow_labels.push_back({mi, c, mj});
        t.inverse.push_back(-1);  // filled below
      }
  const int arrows = static_cast<int>(t.src.size());
  for (int a = 0; a < arrows; ++a) {
    const auto& lbl = out.arrow_labels[a];
    t.inverse[a] = index.at(key(lbl[2], lbl[0], g->inverse(lbl[1])));
  }
  t.unit.resize(m);
  for (int mi = 0; mi < m; ++mi) t.unit[mi] = index.at(key(mi, mi, g->unit(object_map[mi])));
  // compositions: group arrows by middle object
  std::vector<std::vector<int>> starting(m), ending(m);
  for (int a = 0; a < arrows; ++a) {
    starting[t.src[a]].push_back(a);
    ending[t.tgt[a]].push_back(a);
  }
  for (int mid = 0; mid < m; ++mid)
    for (int a : ending[mid])
      for (int b : starting[mid]) {
        int c = g->compose(out.arrow_labels[a][1], out.arrow_labels[b][1]);
        t.compositions.push_back({a, b, index.at(key(t.src[a], t.tgt[b], c))});
      }
  out.groupoid = GroupoidBuilder::build(std::move(t));
  out.projection.dom = out.groupoid;
  out.projection.cod = g;
  out.projection.obj_map = object_map;
  out.projection.arr_map.reserve(arrows);
  for (const auto& lbl : out.arrow_labels) out.projection.arr_map.push_back(lbl[1]);
  return out;
}

InducedGroupoid restriction(GroupoidPtr g, std::vector<int> objects) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  return induced_groupoid(std::move(g), objects);
}

Localisation localisation(GroupoidPtr g, const std::vector<std::vector<int>>& cover) {
  std::vector<char> covered(g->objects(), 0);
  std::vector<int> object_map;
  std::vector<std::pair<int, int>> labels;
  for (size_t j = 0; j < cover.size(); ++j) {
    auto chart = cover[j];
    std::sort(chart.begin(), chart.end());
    chart.erase(std::unique(chart.begin(), chart.end()), chart.end());
    for (int x : chart) {
      if (x < 0 || x >= g->objects()) throw InputError("localisation: chart object out of range");
      covered[x] = 1;
      object_map.push_back(x);
      labels.emplace_back(static_cast<int>(j), x);
    }
  }
  for (int x = 0; x < g->objects(); ++x)
    if (!covered[x])
      throw InputError("localisation: cover misses object " + std::to_string(x));
  auto ind = induced_groupoid(std::move(g), object_map);
  return Localisation{ind.groupoid, std::move(ind.projection), std::move(labels)};
}

// ---------------------------------------------------------------------------
// Orbits and isotropy

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

Isotropy isotropy_at(const Groupoid& g, int x) {
  Isotropy iso;
  iso.basepoint = x;
  auto loops = g.loops_at(x);
  const int u = g.unit(x);
  iso.loop_arrows.push_back(u);
  for (int a : loops)
    if (a != u) iso.loop_arrows.push_back(a);
  const int m = static_cast<int>(iso.loop_arrows.size());
  std::unordered_map<int, int> pos;
  for (int i = 0; i < m; ++i) pos[iso.loop_arrows[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  // group law in function order: mul(a, b) applies b first, then a
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[i][j] = pos.at(g.compose(iso.loop_arrows[j], iso.loop_arrows[i]));
  iso.group = FiniteGroup::from_multiplication_table(std::move(table));
  return iso;
}

OrbitData orbits_and_isotropy(const Groupoid& g) {
  OrbitData data;
  UnionFind uf(g.objects());
  for (int a = 0; a < g.arrows(); ++a) uf.merge(g.src(a), g.tgt(a));
  std::vector<int> orbit_index(g.objects(), -1);
  data.orbit_of.resize(g.objects());
  for (int x = 0; x < g.objects(); ++x) {
    int root = uf.find(x);
    if (orbit_index[root] < 0) {
      orbit_index[root] = data.count();
      data.orbits.push_back({});
      data.representatives.push_back(x);
    }
    data.orbit_of[x] = orbit_index[root];
    data.orbits[orbit_index[root]].push_back(x);
  }
  data.isotropy.reserve(data.count());
  for (int rep : data.representatives) data.isotropy.push_back(isotropy_at(g, rep));
  return data;
}

OrbitSpace orbit_space(const Groupoid& g) {
  UnionFind uf(g.objects());
  for (int a = 0; a < g.arrows(); ++a) uf.merge(g.src(a), g.tgt(a));
  OrbitSpace s;
  s.quotient.resize(g.objects());
  std::vector<int> orbit_index(g.objects(), -1);
  for (int x = 0; x < g.objects(); ++x) {
    int root = uf.find(x);
    if (orbit_index[root] < 0) orbit_index[root] = s.count++;
    s.quotient[x] = orbit_index[root];
  }
  return s;
}

bool is_connected(const Groupoid& g) { return orbit_space(g).count <= 1; }

}  // namespace orb
