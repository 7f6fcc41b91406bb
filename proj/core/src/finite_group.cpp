#include "orb/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "orb/errors.hpp"

namespace orb {

namespace {

std::vector<int> compose_perms(const std::vector<int>& a, const std::vector<int>& b) {
  // (a o b)(x) = a(b(x))
  std::vector<int> r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
  return r;
}

void check_permutation(int degree, const std::vector<int>& p) {
  if (static_cast<int>(p.size()) != degree)
    throw InputError("permutation has wrong length for degree " + std::to_string(degree));
  std::vector<char> seen(degree, 0);
  for (int v : p) {
    if (v < 0 || v >= degree) throw InputError("permutation entry out of range");
    if (seen[v]) throw InputError("permutation entry repeated: not a bijection");
    seen[v] = 1;
  }
}

}  // namespace

FiniteGroup::FiniteGroup() : n_(1), table_{0}, inverse_{0} {}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  FiniteGroup g;
  g.n_ = n;
  g.table_.assign(static_cast<size_t>(n) * n, 0);
  g.inverse_.resize(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) g.table_[static_cast<size_t>(a) * n + b] = (a + b) % n;
    g.inverse_[a] = (n - a) % n;
  }
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1) throw InputError("symmetric group degree must be positive");
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> swap01(n), cycle(n);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens = {swap01, cycle};
  }
  return from_permutations(n, gens);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  const int na = a.order(), nb = b.order();
  g.n_ = na * nb;
  g.table_.assign(static_cast<size_t>(g.n_) * g.n_, 0);
  g.inverse_.resize(g.n_);
  auto id = [nb](int x, int y) { return x * nb + y; };
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1) {
      g.inverse_[id(x1, y1)] = id(a.inverse(x1), b.inverse(y1));
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          g.table_[static_cast<size_t>(id(x1, y1)) * g.n_ + id(x2, y2)] =
              id(a.mul(x1, x2), b.mul(y1, y2));
    }
  return g;
}

FiniteGroup FiniteGroup::from_multiplication_table(std::vector<std::vector<int>> table,
                                                   std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InputError("multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw InputError("multiplication table entry out of range");
  }
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw InputError("names list length does not match group order");

  FiniteGroup g;
  g.n_ = n;
  g.table_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table_[static_cast<size_t>(a) * n + b] = table[a][b];
  g.names_ = std::move(names);

  for (int a = 0; a < n; ++a)
    if (g.mul(0, a) != a || g.mul(a, 0) != a)
      throw ValidationError("element 0 is not a two-sided identity");
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inverse_[a] = b;
        break;
      }
    if (g.inverse_[a] < 0)
      throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw ValidationError("multiplication table is not associative at (" +
                                std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
  return g;
}

FiniteGroup FiniteGroup::from_permutations(int degree,
                                           const std::vector<std::vector<int>>& generators) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  for (const auto& p : generators) check_permutation(degree, p);

  std::vector<int> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);

  // Breadth-first closure; discovery order fixes element ids, identity first.
  std::vector<std::vector<int>> elems{identity};
  std::map<std::vector<int>, int> index{{identity, 0}};
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gen : generators) {
      auto p = compose_perms(elems[i], gen);
      if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
    }
  }

  const int n = static_cast<int>(elems.size());
  FiniteGroup g;
  g.n_ = n;
  g.degree_ = degree;
  g.perms_ = elems;
  g.table_.resize(static_cast<size_t>(n) * n);
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = index.at(compose_perms(elems[a], elems[b]));
      g.table_[static_cast<size_t>(a) * n + b] = c;
      if (c == 0) g.inverse_[a] = b;
    }
  return g;
}

int FiniteGroup::element_order(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

int FiniteGroup::power(int a, int k) const {
  int r = 0;
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (!commutes(a, b)) return false;
  return true;
}

std::vector<int> FiniteGroup::order_profile() const {
  std::vector<int> p(n_);
  for (int a = 0; a < n_; ++a) p[a] = element_order(a);
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<char> generated(n_, 0);
  generated[0] = 1;
  int count = 1;
  for (int x = 0; x < n_ && count < n_; ++x) {
    if (generated[x]) continue;
    gens.push_back(x);
    // close the generated set under multiplication
    std::vector<int> members;
    for (int e = 0; e < n_; ++e)
      if (generated[e]) members.push_back(e);
    members.push_back(x);
    generated[x] = 1;
    ++count;
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members.size(); ++j) {
        int p = mul(members[i], members[j]);
        if (!generated[p]) {
          generated[p] = 1;
          ++count;
          members.push_back(p);
        }
      }
  }
  return gens;
}

const std::vector<int>& FiniteGroup::permutation(int a) const {
  if (!has_permutations()) throw InputError("group carries no permutation record");
  return perms_[a];
}

std::string FiniteGroup::name(int a) const {
  if (!names_.empty()) return names_[a];
  return std::to_string(a);
}

ConjugacyData conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  ConjugacyData data;
  data.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (data.class_of[x] >= 0) continue;
    const int cls = static_cast<int>(data.classes.size());
    std::vector<int> members;
    for (int h = 0; h < n; ++h) {
      int y = g.conjugate(h, x);
      if (data.class_of[y] < 0) {
        data.class_of[y] = cls;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    data.representatives.push_back(members.front());
    data.classes.push_back(std::move(members));
  }
  return data;
}

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const int m = static_cast<int>(elements.size());
  if (m == 0 || elements[0] != 0) throw InputError("subgroup must contain the identity");
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < m; ++i) pos[elements[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = pos[g.mul(elements[i], elements[j])];
      if (p < 0) throw InputError("element set is not closed under multiplication");
      table[i][j] = p;
    }
  Subgroup sub;
  sub.group = FiniteGroup::from_multiplication_table(std::move(table));
  sub.embedding = std::move(elements);
  return sub;
}

Subgroup centralizer(const FiniteGroup& g, int x) {
  if (x < 0 || x >= g.order()) throw InputError("centralizer: invalid element id");
  std::vector<int> members;
  for (int h = 0; h < g.order(); ++h)
    if (g.commutes(h, x)) members.push_back(h);
  return subgroup_from_elements(g, std::move(members));
}

std::vector<Subgroup> cyclic_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> seen;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> members{0};
    int p = x;
    while (p != 0) {
      members.push_back(p);
      p = g.mul(p, x);
    }
    std::sort(members.begin(), members.end());
    seen.insert(std::move(members));
  }
  std::vector<std::vector<int>> sets(seen.begin(), seen.end());
  std::stable_sort(sets.begin(), sets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> subs;
  subs.reserve(sets.size());
  for (auto& s : sets) subs.push_back(subgroup_from_elements(g, std::move(s)));
  return subs;
}

std::vector<std::vector<int>> left_cosets(const FiniteGroup& g, const Subgroup& sub) {
  std::vector<char> assigned(g.order(), 0);
  std::vector<std::vector<int>> cosets;
  for (int x = 0; x < g.order(); ++x) {
    if (assigned[x]) continue;
    std::vector<int> coset;
    for (int s : sub.embedding) {
      int y = g.mul(x, s);
      assigned[y] = 1;
      coset.push_back(y);
    }
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

namespace {

// Extends a partial homomorphism map by the assignment gen -> img, closing
// under products with everything already mapped and checking consistency.
bool extend_hom(const FiniteGroup& a, const FiniteGroup& b, std::vector<int>& map,
                std::vector<int>& mapped, int gen, int img) {
  if (map[gen] >= 0) return map[gen] == img;
  map[gen] = img;
  mapped.push_back(gen);
  for (size_t i = 0; i < mapped.size(); ++i)
    for (size_t j = 0; j < mapped.size(); ++j) {
      int p = a.mul(mapped[i], mapped[j]);
      int q = b.mul(map[mapped[i]], map[mapped[j]]);
      if (map[p] >= 0) {
        if (map[p] != q) return false;
      } else {
        map[p] = q;
        mapped.push_back(p);
      }
    }
  return true;
}

bool iso_search(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
                size_t k, std::vector<int>& map, std::vector<int>& mapped) {
  if (static_cast<int>(mapped.size()) == a.order()) {
    // Bijectivity: injective on a full-size domain is enough.
    std::vector<char> hit(b.order(), 0);
    for (int v : map) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }
  if (k >= gens.size()) return false;
  int gen = gens[k];
  if (map[gen] >= 0) return iso_search(a, b, gens, k + 1, map, mapped);
  const int want = a.element_order(gen);
  for (int img = 0; img < b.order(); ++img) {
    if (b.element_order(img) != want) continue;
    auto saved_map = map;
    auto saved_mapped = mapped;
    if (extend_hom(a, b, map, mapped, gen, img) &&
        iso_search(a, b, gens, k + 1, map, mapped))
      return true;
    map = std::move(saved_map);
    mapped = std::move(saved_mapped);
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                 int order_bound) {
  if (a.order() > order_bound || b.order() > order_bound)
    throw CapabilityError("isomorphism test refused: order exceeds bound " +
                          std::to_string(order_bound));
  if (a.order() != b.order()) return std::nullopt;
  if (a.order_profile() != b.order_profile()) return std::nullopt;
  if (a.is_abelian() != b.is_abelian()) return std::nullopt;

  auto gens = a.generators();
  std::vector<int> map(a.order(), -1);
  std::vector<int> mapped;
  extend_hom(a, b, map, mapped, 0, 0);
  if (iso_search(a, b, gens, 0, map, mapped)) return map;
  return std::nullopt;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b, int order_bound) {
  return find_isomorphism(a, b, order_bound).has_value();
}

}  // namespace orb
