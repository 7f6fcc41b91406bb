#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orb/equivalence.hpp"
#include "orb/groupoid.hpp"

namespace orb {

/// All arrows with equal source and target, in arrow-id order.
struct LoopSpace {
  std::vector<int> loops;              // arrow ids
  std::vector<int> base;               // loop index -> base object
  std::vector<int> loop_index;         // arrow id -> loop index, -1 if not a loop

  int count() const { return static_cast<int>(loops.size()); }
};

LoopSpace loop_space(const Groupoid& g);

/// The groupoid acting on its own loops by conjugation: an arrow d: x -> y
/// sends a loop c at x to d.c.d^-1 at y. Objects of the inertia groupoid are
/// loops; its arrows are pairs (acting arrow, source loop).
struct InertiaGroupoid {
  GroupoidPtr groupoid;
  GroupoidHom basepoint;  // loop -> base object, (d, c) -> d
  LoopSpace loops;
  std::vector<std::pair<int, int>> arrow_labels;  // (acting base arrow, source loop index)
};

InertiaGroupoid inertia_groupoid(GroupoidPtr g);

/// Conjugation orbits of the loop space, computed without materializing the
/// inertia groupoid's composition table.
struct InertiaOrbits {
  LoopSpace loops;
  std::vector<int> orbit_of;         // per loop index
  std::vector<int> representatives;  // least loop index per orbit

  int count() const { return static_cast<int>(representatives.size()); }
};

InertiaOrbits inertia_orbits(const Groupoid& g);

int inertia_orbit_count(const Groupoid& g);

/// The decomposition of the inertia groupoid of an action groupoid into
/// centralizer actions on fixed-point sets, one component per conjugacy
/// class representative, together with the comparison homomorphism into the
/// inertia groupoid and its verified weak-equivalence certificate.
struct InertiaDecomposition {
  GroupoidPtr base;                           // the action groupoid itself
  InertiaGroupoid inertia;                    // inertia of the base
  std::vector<int> class_representatives;     // group element per component
  std::vector<Subgroup> centralizers;         // Z(g) per component
  std::vector<std::vector<int>> fixed_points; // M^g per component, original ids
  std::vector<GroupAction> components;        // Z(g) acting on M^g
  GroupoidPtr decomposition;                  // disjoint union of the components
  GroupoidHom comparison;                     // decomposition -> inertia groupoid
  WeakEquivalenceReport certificate;          // verified, never assumed
};

InertiaDecomposition inertia_decomposition(const GroupAction& a);

/// Map induced on inertia orbits by a homomorphism (loops map to loops):
/// dom inertia orbit index -> cod inertia orbit index.
std::vector<int> inertia_orbit_map(const GroupoidHom& f);

struct CentralizerCheck {
  bool ok = true;
  int loop = -1;  // first failing loop index
  std::string detail;
};

/// For every loop, verifies that the inertia isotropy at it consists of
/// exactly the base-isotropy arrows commuting with it.
CentralizerCheck centralizer_isotropy_check(const Groupoid& g);

}  // namespace orb
