#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orb/finite_group.hpp"

namespace orb {

class Groupoid;
using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// A left action of a finite group on a finite point set.
struct GroupAction {
  FiniteGroup group;
  int points = 0;
  std::vector<std::vector<int>> table;  // table[g][x] = g.x

  int act(int g, int x) const { return table[g][x]; }
  /// Checks the unit and compatibility laws; throws InputError on failure.
  void validate() const;
};

GroupAction trivial_action(FiniteGroup g, int points);
GroupAction regular_action(const FiniteGroup& g);
/// Left multiplication on the left cosets of the subgroup.
GroupAction coset_action(const FiniteGroup& g, const Subgroup& sub);
/// Action by the recorded permutations on {0..degree-1}.
GroupAction natural_action(const FiniteGroup& g);
/// Tagged disjoint union of the point sets; the groups must be identical.
GroupAction combine_actions(const std::vector<GroupAction>& parts);

/// Finite groupoid: objects 0..objects()-1, arrows 0..arrows()-1, with
/// explicit structure tables.
///
/// compose(a, b) is diagrammatic order -- a then b -- and is defined exactly
/// when tgt(a) == src(b).
class Groupoid {
 public:
  struct Tables {
    int objects = 0;
    std::vector<int> src, tgt;                  // per arrow
    std::vector<int> unit;                      // per object
    std::vector<int> inverse;                   // per arrow
    std::vector<std::array<int, 3>> compositions;  // (a, b, a-then-b)
  };

  /// Wraps raw tables without checking the axioms; run validate() to audit.
  static GroupoidPtr from_tables(Tables t);

  int objects() const { return objects_; }
  int arrows() const { return static_cast<int>(src_.size()); }
  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int unit(int x) const { return unit_[x]; }
  int inverse(int a) const { return inverse_[a]; }

  std::optional<int> compose_opt(int a, int b) const;
  /// Throws InternalCheckError when the pair is not composable.
  int compose(int a, int b) const;
  /// For by: x -> y and a loop at x, returns the loop by.loop.by^-1 at y.
  int conjugate(int by, int loop) const;

  const std::vector<int>& arrows_from(int x) const { return out_[x]; }
  const std::vector<int>& arrows_into(int x) const { return in_[x]; }
  /// Arrows x -> y in ascending id order.
  std::vector<int> hom_set(int x, int y) const;
  std::vector<int> loops_at(int x) const;

  size_t composition_count() const { return comp_.size(); }
  const Tables& tables() const { return tables_; }

 private:
  friend class GroupoidBuilder;
  Groupoid() = default;

  int objects_ = 0;
  std::vector<int> src_, tgt_, unit_, inverse_;
  std::unordered_map<std::uint64_t, int> comp_;
  std::vector<std::vector<int>> out_, in_;
  Tables tables_;  // original input, kept for validation and serialization
};

struct GroupoidViolation {
  std::string rule;         // machine tag, e.g. "composition-typing"
  std::vector<int> arrows;  // offending arrow ids
  std::string detail;
};

/// Exhaustive audit of the groupoid axioms; reports the first violation.
std::optional<GroupoidViolation> validate(const Groupoid& g);

// ---------------------------------------------------------------------------
// Constructions

GroupoidPtr unit_groupoid(int n_objects);

/// G acting on X: objects are points, arrows are (g, x) pairs with
/// id = g * points + x, src = x, tgt = g.x.
GroupoidPtr action_groupoid(const GroupAction& a);

/// One-object groupoid with loop group G (G acting on a point).
GroupoidPtr point_quotient(const FiniteGroup& g);

/// Tagged coproduct; no arrows between parts.
GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts);

/// A functor between finite groupoids, given by its object and arrow maps.
struct GroupoidHom {
  GroupoidPtr dom, cod;
  std::vector<int> obj_map;
  std::vector<int> arr_map;

  int on_object(int x) const { return obj_map[x]; }
  int on_arrow(int a) const { return arr_map[a]; }
};

GroupoidHom identity_hom(GroupoidPtr g);
/// f then g; requires f.cod and g.dom to be the same groupoid object.
GroupoidHom compose_homs(const GroupoidHom& f, const GroupoidHom& g);

/// Groupoid induced along f: M -> G0. Objects are 0..|M|-1; there is one
/// arrow (m, c, m') for every arrow c: f(m) -> f(m') of the base.
struct InducedGroupoid {
  GroupoidPtr groupoid;
  GroupoidHom projection;                          // to the base groupoid
  std::vector<std::array<int, 3>> arrow_labels;    // (m, base arrow, m')
};

InducedGroupoid induced_groupoid(GroupoidPtr g, const std::vector<int>& object_map);

/// Full subgroupoid on the given objects (induced along the inclusion).
InducedGroupoid restriction(GroupoidPtr g, std::vector<int> objects);

/// Localisation over a cover of G0: objects are pairs (chart, object).
struct Localisation {
  GroupoidPtr groupoid;
  GroupoidHom projection;
  std::vector<std::pair<int, int>> object_labels;  // (chart index, base object)
};

/// Throws InputError when the cover does not exhaust G0.
Localisation localisation(GroupoidPtr g, const std::vector<std::vector<int>>& cover);

// ---------------------------------------------------------------------------
// Orbits and isotropy

/// The loop group at a basepoint, as an abstract finite group plus the list
/// of loop arrows realizing its elements (loop_arrows[0] is the unit).
struct Isotropy {
  FiniteGroup group;
  std::vector<int> loop_arrows;  // element id -> arrow id
  int basepoint = 0;
};

Isotropy isotropy_at(const Groupoid& g, int x);

struct OrbitData {
  std::vector<std::vector<int>> orbits;  // sorted members, ordered by least member
  std::vector<int> representatives;      // least object per orbit
  std::vector<int> orbit_of;             // object -> orbit index
  std::vector<Isotropy> isotropy;        // per orbit, at the representative

  int count() const { return static_cast<int>(orbits.size()); }
};

OrbitData orbits_and_isotropy(const Groupoid& g);

/// Orbit partition only (no isotropy computation).
struct OrbitSpace {
  int count = 0;
  std::vector<int> quotient;  // object -> orbit id, ordered by least member
};

OrbitSpace orbit_space(const Groupoid& g);

// Point-set predicates. Finite groupoids are compact, etale and proper for
// free: the smooth-side conditions degenerate over finite discrete data, so
// these exist for API symmetry only.
inline bool is_compact(const Groupoid&) { return true; }
inline bool is_etale(const Groupoid&) { return true; }
inline bool is_proper(const Groupoid&) { return true; }
bool is_connected(const Groupoid& g);

}  // namespace orb
