#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orb/groupoid.hpp"

namespace orb {

struct HomViolation {
  std::string rule;
  std::vector<int> arrows;
  std::string detail;
};

/// Exhaustively checks the functor laws; reports the first violation.
std::optional<HomViolation> hom_validate(const GroupoidHom& f);

/// A natural isomorphism between two parallel homomorphisms, given by one
/// component arrow from(x) -> to(x) per object of the domain.
struct NaturalIso {
  GroupoidHom from, to;
  std::vector<int> component;
};

/// True iff every component is well-typed and every naturality square
/// commutes. Throws InputError when from/to endpoints disagree.
bool natural_iso_check(const NaturalIso& tau);

/// Searches for a natural isomorphism f => g; components are propagated
/// along spanning trees per orbit, so only basepoint choices are enumerated.
std::optional<std::vector<int>> find_natural_iso(const GroupoidHom& f, const GroupoidHom& g);

struct WeakEquivalenceReport {
  bool weak = false;
  /// For each codomain object, an arrow into it whose source is in the image
  /// of the object map (witnesses essential surjectivity).
  std::vector<int> surjectivity_witness;
  struct Failure {
    std::string condition;  // "essential-surjectivity" | "fully-faithful"
    int x = -1, y = -1;     // failing object (pair)
    int dom_count = 0, cod_count = 0;
    std::string detail;
  };
  std::optional<Failure> failure;

  explicit operator bool() const { return weak; }
};

/// Finite-level weak equivalence test: essential surjectivity plus a
/// bijection dom(x, y) -> cod(f x, f y) on every object pair.
WeakEquivalenceReport is_weak_equivalence(const GroupoidHom& f);

inline constexpr std::int64_t kDefaultSearchBudget = 1'000'000;

struct StrongEquivalenceResult {
  bool strong = false;
  std::optional<GroupoidHom> weak_inverse;
};

/// Searches for a weak inverse (eta with eta.f ~ id and f.eta ~ id). The
/// search enumerates basepoint images and isotropy homomorphisms per orbit;
/// throws CapabilityError when the candidate space exceeds the budget.
StrongEquivalenceResult is_strong_equivalence(const GroupoidHom& f,
                                              std::int64_t search_budget = kDefaultSearchBudget);

/// Weak fibred product of phi: K -> G and psi: L -> G. Objects are triples
/// (k, c, l) with c: phi(k) -> psi(l) in G.
struct WeakPullback {
  GroupoidPtr groupoid;
  GroupoidHom to_left, to_right;
  std::vector<std::array<int, 3>> object_labels;  // (k, connecting arrow, l)
};

WeakPullback weak_pullback(const GroupoidHom& phi, const GroupoidHom& psi);

/// A span (left: K -> G, right: K -> H) whose left leg is a weak equivalence.
struct GeneralizedMap {
  GroupoidHom left;
  GroupoidHom right;

  GroupoidPtr source() const { return left.cod; }
  GroupoidPtr target() const { return right.cod; }

  /// Verifies hom validity and that the left leg is a weak equivalence;
  /// throws ValidationError otherwise.
  static GeneralizedMap checked(GroupoidHom left, GroupoidHom right);
};

GeneralizedMap identity_span(GroupoidPtr g);

/// Span composition through the weak pullback of the inner legs. The
/// resulting left leg is re-verified; failure raises InternalCheckError.
GeneralizedMap compose_generalized(const GeneralizedMap& m1, const GeneralizedMap& m2);

enum class Tristate { yes, no, unknown };

/// Decides equivalence of two spans with common endpoints by testing the
/// canonical mediator (the weak pullback of the left legs). "unknown" is
/// returned only when that mediator exceeds the object bound.
Tristate generalized_maps_equivalent(const GeneralizedMap& m1, const GeneralizedMap& m2,
                                     int mediator_object_bound);

/// Multiset of isotropy-group isomorphism classes, one per orbit: the
/// complete Morita invariant of a finite groupoid.
struct MoritaSignature {
  struct ClassEntry {
    FiniteGroup representative;
    int count = 0;
  };
  std::vector<ClassEntry> classes;  // ordered by (order, order profile)
};

/// Throws CapabilityError when an isotropy group exceeds the iso-test bound.
MoritaSignature morita_signature(const Groupoid& g, int order_bound = kIsomorphismOrderBound);

bool signatures_equal(const MoritaSignature& a, const MoritaSignature& b);

struct MoritaResult {
  bool equivalent = false;
  /// When equivalent: an explicit span g <= K -> h through the common
  /// skeleton, both legs weak equivalences.
  std::optional<GeneralizedMap> certificate;
};

MoritaResult are_morita_equivalent(GroupoidPtr g, GroupoidPtr h);

/// The map induced on orbit spaces: dom orbit index -> cod orbit index.
std::vector<int> orbit_map(const GroupoidHom& f);

}  // namespace orb
