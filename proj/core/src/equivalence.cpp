#include "orb/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

#include "orb/errors.hpp"

namespace orb {

namespace {

inline std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

void require_valid(const GroupoidHom& f, const char* who) {
  if (auto v = hom_validate(f))
    throw ValidationError(std::string(who) + ": homomorphism invalid (" + v->rule + ": " +
                          v->detail + ")");
}

// Arrows from the orbit representative to every object of its orbit,
// path[rep] = unit(rep). Built by breadth-first search in arrow-id order.
std::vector<int> paths_from_representatives(const Groupoid& g, const OrbitData& orbits) {
  std::vector<int> path(g.objects(), -1);
  for (int rep : orbits.representatives) {
    path[rep] = g.unit(rep);
    std::queue<int> q;
    q.push(rep);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int a : g.arrows_from(x)) {
        int y = g.tgt(a);
        if (path[y] < 0) {
          path[y] = g.compose(path[x], a);
          q.push(y);
        }
      }
    }
  }
  return path;
}

}  // namespace

// ---------------------------------------------------------------------------
// Homomorphism and natural isomorphism checks

std::optional<HomViolation> hom_validate(const GroupoidHom& f) {
  const Groupoid& dom = *f.dom;
  const Groupoid& cod = *f.cod;
  if (static_cast<int>(f.obj_map.size()) != dom.objects() ||
      static_cast<int>(f.arr_map.size()) != dom.arrows())
    return HomViolation{"map-shape", {}, "object or arrow map has wrong length"};
  for (int v : f.obj_map)
    if (v < 0 || v >= cod.objects()) return HomViolation{"object-range", {}, "object image out of range"};
  for (int v : f.arr_map)
    if (v < 0 || v >= cod.arrows()) return HomViolation{"arrow-range", {}, "arrow image out of range"};

  for (int a = 0; a < dom.arrows(); ++a) {
    int fa = f.arr_map[a];
    if (cod.src(fa) != f.obj_map[dom.src(a)] || cod.tgt(fa) != f.obj_map[dom.tgt(a)])
      return HomViolation{"endpoint", {a}, "arrow image has wrong endpoints"};
    if (f.arr_map[dom.inverse(a)] != cod.inverse(fa))
      return HomViolation{"inverse", {a}, "inverses not preserved"};
  }
  for (int x = 0; x < dom.objects(); ++x)
    if (f.arr_map[dom.unit(x)] != cod.unit(f.obj_map[x]))
      return HomViolation{"unit", {dom.unit(x)}, "unit of object " + std::to_string(x) + " not preserved"};
  for (int a = 0; a < dom.arrows(); ++a)
    for (int b : dom.arrows_from(dom.tgt(a)))
      if (f.arr_map[dom.compose(a, b)] != cod.compose(f.arr_map[a], f.arr_map[b]))
        return HomViolation{"composition", {a, b}, "composition not preserved"};
  return std::nullopt;
}

bool natural_iso_check(const NaturalIso& tau) {
  if (tau.from.dom != tau.to.dom || tau.from.cod != tau.to.cod)
    throw InputError("natural_iso_check: parallel homomorphisms required");
  const Groupoid& dom = *tau.from.dom;
  const Groupoid& cod = *tau.from.cod;
  if (static_cast<int>(tau.component.size()) != dom.objects()) return false;
  for (int x = 0; x < dom.objects(); ++x) {
    int c = tau.component[x];
    if (c < 0 || c >= cod.arrows()) return false;
    if (cod.src(c) != tau.from.obj_map[x] || cod.tgt(c) != tau.to.obj_map[x]) return false;
  }
  for (int a = 0; a < dom.arrows(); ++a) {
    int x = dom.src(a), y = dom.tgt(a);
    if (cod.compose(tau.from.arr_map[a], tau.component[y]) !=
        cod.compose(tau.component[x], tau.to.arr_map[a]))
      return false;
  }
  return true;
}

std::optional<std::vector<int>> find_natural_iso(const GroupoidHom& f, const GroupoidHom& g) {
  if (f.dom != g.dom || f.cod != g.cod)
    throw InputError("find_natural_iso: parallel homomorphisms required");
  const Groupoid& dom = *f.dom;
  const Groupoid& cod = *f.cod;
  auto orbits = orbit_space(dom);
  auto reps = [&] {
    std::vector<int> r(orbits.count, -1);
    for (int x = dom.objects() - 1; x >= 0; --x) r[orbits.quotient[x]] = x;
    return r;
  }();
  // paths from each representative within the domain
  OrbitData od;  // minimal reconstruction to reuse the path helper
  od.representatives = reps;
  auto path = paths_from_representatives(dom, od);

  std::vector<int> component(dom.objects(), -1);
  std::vector<std::vector<int>> orbit_arrows(orbits.count);
  for (int a = 0; a < dom.arrows(); ++a) orbit_arrows[orbits.quotient[dom.src(a)]].push_back(a);

  for (int o = 0; o < orbits.count; ++o) {
    int r = reps[o];
    bool solved = false;
    for (int cand : cod.hom_set(f.obj_map[r], g.obj_map[r])) {
      // propagate along the spanning paths, then verify every arrow
      for (int x = 0; x < dom.objects(); ++x) {
        if (orbits.quotient[x] != o) continue;
        component[x] =
            cod.compose(cod.inverse(f.arr_map[path[x]]), cod.compose(cand, g.arr_map[path[x]]));
      }
      bool ok = true;
      for (int a : orbit_arrows[o]) {
        int x = dom.src(a), y = dom.tgt(a);
        if (cod.compose(f.arr_map[a], component[y]) != cod.compose(component[x], g.arr_map[a])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        solved = true;
        break;
      }
    }
    if (!solved) return std::nullopt;
  }
  return component;
}

// ---------------------------------------------------------------------------
// Weak equivalence

WeakEquivalenceReport is_weak_equivalence(const GroupoidHom& f) {
  require_valid(f, "is_weak_equivalence");
  const Groupoid& dom = *f.dom;
  const Groupoid& cod = *f.cod;
  WeakEquivalenceReport report;

  // (i) essential surjectivity: every codomain object receives an arrow from
  // the image of the object map. Submersion clauses are vacuous here.
  std::vector<char> in_image(cod.objects(), 0);
  for (int v : f.obj_map) in_image[v] = 1;
  report.surjectivity_witness.assign(cod.objects(), -1);
  for (int y = 0; y < cod.objects(); ++y) {
    for (int a : cod.arrows_into(y))
      if (in_image[cod.src(a)]) {
        report.surjectivity_witness[y] = a;
        break;
      }
    if (report.surjectivity_witness[y] < 0) {
      report.failure = WeakEquivalenceReport::Failure{
          "essential-surjectivity", -1, y, 0, 0,
          "object " + std::to_string(y) + " unreachable from the image"};
      return report;
    }
  }

  // (ii) fully faithful: arr_map restricts to a bijection
  // dom(x, y) -> cod(f x, f y) for every object pair.
  std::unordered_map<std::uint64_t, int> dom_count, cod_count;
  for (int a = 0; a < dom.arrows(); ++a) ++dom_count[pair_key(dom.src(a), dom.tgt(a))];
  for (int a = 0; a < cod.arrows(); ++a) ++cod_count[pair_key(cod.src(a), cod.tgt(a))];

  // injectivity per fibre
  std::unordered_map<std::uint64_t, std::vector<int>> fibre_images;
  for (int a = 0; a < dom.arrows(); ++a)
    fibre_images[pair_key(dom.src(a), dom.tgt(a))].push_back(f.arr_map[a]);
  for (auto& [key, images] : fibre_images) {
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
      int x = static_cast<int>(key >> 32), y = static_cast<int>(key & 0xffffffffu);
      report.failure = WeakEquivalenceReport::Failure{
          "fully-faithful", x, y, static_cast<int>(images.size()), 0,
          "arrow map not injective on this hom-set"};
      return report;
    }
  }

  for (int x = 0; x < dom.objects(); ++x)
    for (int y = 0; y < dom.objects(); ++y) {
      auto dit = dom_count.find(pair_key(x, y));
      auto cit = cod_count.find(pair_key(f.obj_map[x], f.obj_map[y]));
      int d = dit == dom_count.end() ? 0 : dit->second;
      int c = cit == cod_count.end() ? 0 : cit->second;
      if (d != c) {
        report.failure = WeakEquivalenceReport::Failure{
            "fully-faithful", x, y, d, c,
            "hom-set sizes disagree: " + std::to_string(d) + " vs " + std::to_string(c)};
        return report;
      }
    }

  report.weak = true;
  return report;
}

// ---------------------------------------------------------------------------
// Strong equivalence

namespace {

// Enumerates group homomorphisms from a to b by backtracking over generator
// images; calls visit(map) for each complete homomorphism. visit returns true
// to stop the enumeration. budget counts candidate extensions.
bool enumerate_homs(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
                    size_t k, std::vector<int>& map, std::vector<int>& mapped,
                    std::int64_t& budget, const std::function<bool(const std::vector<int>&)>& visit);

bool hom_extend(const FiniteGroup& a, const FiniteGroup& b, std::vector<int>& map,
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

bool enumerate_homs(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
                    size_t k, std::vector<int>& map, std::vector<int>& mapped,
                    std::int64_t& budget, const std::function<bool(const std::vector<int>&)>& visit) {
  if (static_cast<int>(mapped.size()) == a.order() || k >= gens.size()) {
    if (static_cast<int>(mapped.size()) == a.order()) return visit(map);
    return false;
  }
  int gen = gens[k];
  if (map[gen] >= 0) return enumerate_homs(a, b, gens, k + 1, map, mapped, budget, visit);
  const int gen_order = a.element_order(gen);
  for (int img = 0; img < b.order(); ++img) {
    if (gen_order % b.element_order(img) != 0) continue;
    if (--budget < 0) throw CapabilityError("strong-equivalence search budget exceeded");
    auto saved_map = map;
    auto saved_mapped = mapped;
    if (hom_extend(a, b, map, mapped, gen, img) &&
        enumerate_homs(a, b, gens, k + 1, map, mapped, budget, visit))
      return true;
    map = std::move(saved_map);
    mapped = std::move(saved_mapped);
  }
  return false;
}

}  // namespace

StrongEquivalenceResult is_strong_equivalence(const GroupoidHom& f, std::int64_t search_budget) {
  require_valid(f, "is_strong_equivalence");
  const GroupoidPtr G = f.dom;
  const GroupoidPtr H = f.cod;
  auto dom_orbits = orbits_and_isotropy(*G);
  auto cod_orbits = orbits_and_isotropy(*H);

  // A weak inverse forces a bijection of orbit spaces.
  if (dom_orbits.count() != cod_orbits.count()) return {};
  std::vector<int> matched_dom_orbit(cod_orbits.count(), -1);
  for (int o = 0; o < dom_orbits.count(); ++o) {
    int image_orbit = cod_orbits.orbit_of[f.obj_map[dom_orbits.representatives[o]]];
    if (matched_dom_orbit[image_orbit] >= 0) return {};
    matched_dom_orbit[image_orbit] = o;
  }

  auto dom_paths = paths_from_representatives(*G, dom_orbits);
  auto cod_paths = paths_from_representatives(*H, cod_orbits);

  GroupoidHom eta;
  eta.dom = H;
  eta.cod = G;
  eta.obj_map.assign(H->objects(), -1);
  eta.arr_map.assign(H->arrows(), -1);

  std::vector<std::vector<int>> cod_orbit_arrows(cod_orbits.count());
  for (int a = 0; a < H->arrows(); ++a)
    cod_orbit_arrows[cod_orbits.orbit_of[H->src(a)]].push_back(a);
  std::vector<std::vector<int>> dom_orbit_arrows(dom_orbits.count());
  for (int a = 0; a < G->arrows(); ++a)
    dom_orbit_arrows[dom_orbits.orbit_of[G->src(a)]].push_back(a);

  std::int64_t budget = search_budget;

  for (int co = 0; co < cod_orbits.count(); ++co) {
    const int po = matched_dom_orbit[co];
    const Isotropy& hy = cod_orbits.isotropy[co];
    const Isotropy& gx = dom_orbits.isotropy[po];
    const int y_r = cod_orbits.representatives[co];
    const int x_r = dom_orbits.representatives[po];

    // element id of the loop at y_r realized by arrow id
    std::unordered_map<int, int> loop_elt;
    for (size_t i = 0; i < hy.loop_arrows.size(); ++i)
      loop_elt[hy.loop_arrows[i]] = static_cast<int>(i);

    auto gens = hy.group.generators();
    std::vector<int> hom_map(hy.group.order(), -1);
    std::vector<int> hom_mapped;
    hom_extend(hy.group, gx.group, hom_map, hom_mapped, 0, 0);

    bool solved = enumerate_homs(
        hy.group, gx.group, gens, 0, hom_map, hom_mapped, budget,
        [&](const std::vector<int>& h) -> bool {
          // assemble eta on this component: collapse objects onto x_r
          for (int y = 0; y < H->objects(); ++y)
            if (cod_orbits.orbit_of[y] == co) eta.obj_map[y] = x_r;
          for (int a : cod_orbit_arrows[co]) {
            int y = H->src(a), y2 = H->tgt(a);
            int loop = H->compose(H->compose(cod_paths[y], a), H->inverse(cod_paths[y2]));
            eta.arr_map[a] = gx.loop_arrows[h[loop_elt.at(loop)]];
          }
          // f.eta ~ id_H on this component: propagate a component arrow
          // candidate from the representative and verify naturality.
          for (int cand : H->hom_set(y_r, f.obj_map[x_r])) {
            bool ok = true;
            std::vector<std::pair<int, int>> comp;  // (object, component arrow)
            for (int y = 0; y < H->objects(); ++y) {
              if (cod_orbits.orbit_of[y] != co) continue;
              // naturality along path: c(y) = path^-1 . cand . f(eta(path))
              int c = H->compose(H->inverse(cod_paths[y]),
                                 H->compose(cand, f.arr_map[eta.arr_map[cod_paths[y]]]));
              comp.emplace_back(y, c);
            }
            std::vector<int> cy(H->objects(), -1);
            for (auto& [y, c] : comp) cy[y] = c;
            for (int a : cod_orbit_arrows[co]) {
              int y = H->src(a), y2 = H->tgt(a);
              if (H->compose(a, cy[y2]) != H->compose(cy[y], f.arr_map[eta.arr_map[a]])) {
                ok = false;
                break;
              }
            }
            if (ok) {
              // eta.f ~ id_G on the matching component
              for (int dcand : G->hom_set(x_r, eta.obj_map[f.obj_map[x_r]])) {
                bool ok2 = true;
                std::vector<int> cx(G->objects(), -1);
                for (int x = 0; x < G->objects(); ++x) {
                  if (dom_orbits.orbit_of[x] != po) continue;
                  cx[x] = G->compose(G->inverse(dom_paths[x]),
                                     G->compose(dcand, eta.arr_map[f.arr_map[dom_paths[x]]]));
                }
                for (int a : dom_orbit_arrows[po]) {
                  int x = G->src(a), x2 = G->tgt(a);
                  if (G->compose(a, cx[x2]) != G->compose(cx[x], eta.arr_map[f.arr_map[a]])) {
                    ok2 = false;
                    break;
                  }
                }
                if (ok2) return true;
              }
            }
          }
          return false;
        });
    if (!solved) return {};
  }

  StrongEquivalenceResult result;
  result.strong = true;
  result.weak_inverse = std::move(eta);
  return result;
}

// ---------------------------------------------------------------------------
// Weak pullback and generalized maps

WeakPullback weak_pullback(const GroupoidHom& phi, const GroupoidHom& psi) {
  if (phi.cod != psi.cod) throw InputError("weak_pullback: codomains differ");
  const Groupoid& K = *phi.dom;
  const Groupoid& L = *psi.dom;
  const Groupoid& G = *phi.cod;

  WeakPullback out;
  auto okey = [&](int k, int c, int l) {
    return (static_cast<std::uint64_t>(k) * L.objects() + l) << 32 |
           static_cast<std::uint32_t>(c);
  };
  std::unordered_map<std::uint64_t, int> object_index;
  for (int k = 0; k < K.objects(); ++k)
    for (int l = 0; l < L.objects(); ++l)
      for (int c : G.hom_set(phi.obj_map[k], psi.obj_map[l])) {
        object_index[okey(k, c, l)] = static_cast<int>(out.object_labels.size());
        out.object_labels.push_back({k, c, l});
      }

  Groupoid::Tables t;
  t.objects = static_cast<int>(out.object_labels.size());
  auto akey = [&](int o, int kappa, int lambda) {
    return (static_cast<std::uint64_t>(o) * K.arrows() + kappa) * L.arrows() + lambda;
  };
  std::unordered_map<std::uint64_t, int> arrow_index;  // (source object, kappa, lambda)
  std::vector<std::array<int, 3>> arrow_labels;
  for (int o = 0; o < t.objects; ++o) {
    auto [k, c, l] = out.object_labels[o];
    for (int kappa : K.arrows_from(k))
      for (int lambda : L.arrows_from(l)) {
        int c2 = G.compose(G.compose(G.inverse(phi.arr_map[kappa]), c), psi.arr_map[lambda]);
        auto it = object_index.find(okey(K.tgt(kappa), c2, L.tgt(lambda)));
        if (it == object_index.end()) continue;  // cannot happen; c2 is a valid connector
        int a = static_cast<int>(t.src.size());
        arrow_index[akey(o, kappa, lambda)] = a;
        arrow_labels.push_back({o, kappa, lambda});
        t.src.push_back(o);
        t.tgt.push_back(it->second);
      }
  }
  const int arrows = static_cast<int>(t.src.size());
  t.inverse.resize(arrows);
  for (int a = 0; a < arrows; ++a) {
    auto [o, kappa, lambda] = arrow_labels[a];
    t.inverse[a] = arrow_index.at(akey(t.tgt[a], K.inverse(kappa), L.inverse(lambda)));
  }
  t.unit.resize(t.objects);
  for (int o = 0; o < t.objects; ++o) {
    auto [k, c, l] = out.object_labels[o];
    t.unit[o] = arrow_index.at(akey(o, K.unit(k), L.unit(l)));
  }
  // compositions
  std::vector<std::vector<int>> starting(t.objects);
  for (int a = 0; a < arrows; ++a) starting[t.src[a]].push_back(a);
  for (int a = 0; a < arrows; ++a)
    for (int b : starting[t.tgt[a]]) {
      auto [oa, ka, la] = arrow_labels[a];
      auto [ob, kb, lb] = arrow_labels[b];
      t.compositions.push_back(
          {a, b, arrow_index.at(akey(oa, K.compose(ka, kb), L.compose(la, lb)))});
    }

  out.groupoid = Groupoid::from_tables(std::move(t));
  out.to_left.dom = out.groupoid;
  out.to_left.cod = phi.dom;
  out.to_right.dom = out.groupoid;
  out.to_right.cod = psi.dom;
  for (const auto& lbl : out.object_labels) {
    out.to_left.obj_map.push_back(lbl[0]);
    out.to_right.obj_map.push_back(lbl[2]);
  }
  for (const auto& lbl : arrow_labels) {
    out.to_left.arr_map.push_back(lbl[1]);
    out.to_right.arr_map.push_back(lbl[2]);
  }
  return out;
}

GeneralizedMap GeneralizedMap::checked(GroupoidHom left, GroupoidHom right) {
  if (left.dom != right.dom) throw InputError("generalized map: legs have different domains");
  require_valid(left, "generalized map (left leg)");
  require_valid(right, "generalized map (right leg)");
  if (!is_weak_equivalence(left).weak)
    throw ValidationError("generalized map: left leg is not a weak equivalence");
  GeneralizedMap m;
  m.left = std::move(left);
  m.right = std::move(right);
  return m;
}

GeneralizedMap identity_span(GroupoidPtr g) {
  GeneralizedMap m;
  m.left = identity_hom(g);
  m.right = identity_hom(std::move(g));
  return m;
}

GeneralizedMap compose_generalized(const GeneralizedMap& m1, const GeneralizedMap& m2) {
  if (m1.right.cod != m2.left.cod)
    throw InputError("compose_generalized: spans do not share the middle groupoid");
  auto pb = weak_pullback(m1.right, m2.left);
  GeneralizedMap out;
  out.left = compose_homs(pb.to_left, m1.left);
  out.right = compose_homs(pb.to_right, m2.right);
  if (!is_weak_equivalence(out.left).weak)
    throw InternalCheckError(
        "compose_generalized: composed left leg failed the weak equivalence check");
  return out;
}

Tristate generalized_maps_equivalent(const GeneralizedMap& m1, const GeneralizedMap& m2,
                                     int mediator_object_bound) {
  if (m1.source() != m2.source() || m1.target() != m2.target())
    throw InputError("generalized_maps_equivalent: spans have different endpoints");
  auto pb = weak_pullback(m1.left, m2.left);
  if (pb.groupoid->objects() > mediator_object_bound) return Tristate::unknown;
  // On the canonical mediator the left legs agree up to the tautological
  // natural isomorphism, so span equivalence reduces to the right legs.
  auto left1 = compose_homs(pb.to_left, m1.left);
  auto left2 = compose_homs(pb.to_right, m2.left);
  if (!find_natural_iso(left1, left2))
    throw InternalCheckError("weak pullback lost its connecting isomorphism");
  auto right1 = compose_homs(pb.to_left, m1.right);
  auto right2 = compose_homs(pb.to_right, m2.right);
  return find_natural_iso(right1, right2) ? Tristate::yes : Tristate::no;
}

// ---------------------------------------------------------------------------
// Morita equivalence

MoritaSignature morita_signature(const Groupoid& g, int order_bound) {
  auto orbits = orbits_and_isotropy(g);
  MoritaSignature sig;
  for (const auto& iso : orbits.isotropy) {
    if (iso.group.order() > order_bound)
      throw CapabilityError("morita signature refused: isotropy order " +
                            std::to_string(iso.group.order()) + " exceeds bound " +
                            std::to_string(order_bound));
    bool placed = false;
    for (auto& cls : sig.classes)
      if (are_isomorphic(cls.representative, iso.group, order_bound)) {
        ++cls.count;
        placed = true;
        break;
      }
    if (!placed) sig.classes.push_back({iso.group, 1});
  }
  std::stable_sort(sig.classes.begin(), sig.classes.end(), [](const auto& a, const auto& b) {
    if (a.representative.order() != b.representative.order())
      return a.representative.order() < b.representative.order();
    return a.representative.order_profile() < b.representative.order_profile();
  });
  return sig;
}

bool signatures_equal(const MoritaSignature& a, const MoritaSignature& b) {
  if (a.classes.size() != b.classes.size()) return false;
  std::vector<char> used(b.classes.size(), 0);
  for (const auto& ca : a.classes) {
    bool matched = false;
    for (size_t j = 0; j < b.classes.size(); ++j) {
      if (used[j] || b.classes[j].count != ca.count) continue;
      if (are_isomorphic(ca.representative, b.classes[j].representative)) {
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

MoritaResult are_morita_equivalent(GroupoidPtr g, GroupoidPtr h) {
  auto sig_g = morita_signature(*g);
  auto sig_h = morita_signature(*h);
  if (!signatures_equal(sig_g, sig_h)) return {};

  // Build the certificate span g <= K -> h where K is the skeleton of g
  // (full subgroupoid on orbit representatives).
  auto g_orbits = orbits_and_isotropy(*g);
  auto h_orbits = orbits_and_isotropy(*h);
  auto skeleton = restriction(g, g_orbits.representatives);

  std::vector<char> used(h_orbits.count(), 0);
  std::vector<int> matched_h_orbit(g_orbits.count(), -1);
  std::vector<std::vector<int>> iso_maps(g_orbits.count());
  for (int o = 0; o < g_orbits.count(); ++o) {
    for (int j = 0; j < h_orbits.count(); ++j) {
      if (used[j]) continue;
      if (auto iso = find_isomorphism(g_orbits.isotropy[o].group, h_orbits.isotropy[j].group)) {
        used[j] = 1;
        matched_h_orbit[o] = j;
        iso_maps[o] = std::move(*iso);
        break;
      }
    }
    if (matched_h_orbit[o] < 0)
      throw InternalCheckError("equal signatures but orbit matching failed");
  }

  GroupoidHom right;
  right.dom = skeleton.groupoid;
  right.cod = h;
  right.obj_map.resize(skeleton.groupoid->objects());
  right.arr_map.resize(skeleton.groupoid->arrows());
  // skeleton object o is the representative of g-orbit o (representatives are
  // ascending, and restriction sorts its objects)
  for (int o = 0; o < skeleton.groupoid->objects(); ++o)
    right.obj_map[o] = h_orbits.representatives[matched_h_orbit[o]];
  for (int a = 0; a < skeleton.groupoid->arrows(); ++a) {
    const auto& lbl = skeleton.arrow_labels[a];  // (o, base loop in g, o)
    if (lbl[0] != lbl[2]) throw InternalCheckError("skeleton has a cross-orbit arrow");
    const Isotropy& gi = g_orbits.isotropy[lbl[0]];
    const Isotropy& hi = h_orbits.isotropy[matched_h_orbit[lbl[0]]];
    int elt = -1;
    for (size_t i = 0; i < gi.loop_arrows.size(); ++i)
      if (gi.loop_arrows[i] == lbl[1]) {
        elt = static_cast<int>(i);
        break;
      }
    if (elt < 0) throw InternalCheckError("skeleton loop missing from isotropy record");
    right.arr_map[a] = hi.loop_arrows[iso_maps[lbl[0]][elt]];
  }

  if (auto v = hom_validate(right))
    throw InternalCheckError("morita certificate right leg invalid: " + v->rule);
  if (!is_weak_equivalence(skeleton.projection).weak || !is_weak_equivalence(right).weak)
    throw InternalCheckError("morita certificate legs failed the weak equivalence check");

  MoritaResult result;
  result.equivalent = true;
  GeneralizedMap span;
  span.left = skeleton.projection;
  span.right = std::move(right);
  result.certificate = std::move(span);
  return result;
}

std::vector<int> orbit_map(const GroupoidHom& f) {
  auto dom = orbit_space(*f.dom);
  auto cod = orbit_space(*f.cod);
  std::vector<int> map(dom.count, -1);
  for (int x = 0; x < f.dom->objects(); ++x) map[dom.quotient[x]] = cod.quotient[f.obj_map[x]];
  return map;
}

}  // namespace orb
