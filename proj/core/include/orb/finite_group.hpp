#pragma once

#include <optional>
#include <string>
#include <vector>

namespace orb {

/// Largest group order accepted by the isomorphism tester. Beyond this the
/// operation refuses (CapabilityError) rather than approximate.
inline constexpr int kIsomorphismOrderBound = 64;

/// A finite group on dense element ids 0..n-1 with the identity at id 0,
/// multiplication stored as a full table.
///
/// Convention: mul(a, b) applies b first, then a, so that for permutation
/// groups mul is function composition and act(mul(a, b), x) = act(a, act(b, x)).
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  /// Builds a group from an explicit table. The table must be a group table
  /// with identity at id 0; otherwise throws ValidationError.
  static FiniteGroup from_multiplication_table(std::vector<std::vector<int>> table,
                                               std::vector<std::string> names = {});

  /// Closure of the given permutations of {0..degree-1} under composition.
  /// An empty generator list yields the trivial group. Each element keeps a
  /// record of its permutation (see permutation()). Malformed permutations
  /// throw InputError.
  static FiniteGroup from_permutations(int degree,
                                       const std::vector<std::vector<int>>& generators);

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  /// g x g^-1
  int conjugate(int g, int x) const { return mul(mul(g, x), inverse(g)); }
  int element_order(int a) const;
  bool commutes(int a, int b) const { return mul(a, b) == mul(b, a); }
  bool is_abelian() const;
  int power(int a, int k) const;

  /// Sorted multiset of element orders; cheap isomorphism invariant.
  std::vector<int> order_profile() const;

  /// Greedy generating set: ascending ids, skipping already-generated elements.
  std::vector<int> generators() const;

  bool has_permutations() const { return degree_ > 0; }
  int degree() const { return degree_; }
  const std::vector<int>& permutation(int a) const;

  std::string name(int a) const;
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& multiplication_table_flat() const { return table_; }

 private:
  int n_ = 1;
  std::vector<int> table_;    // n*n, row-major: table_[a*n + b] = mul(a, b)
  std::vector<int> inverse_;  // per element
  std::vector<std::string> names_;
  int degree_ = 0;                       // >0 when built from permutations
  std::vector<std::vector<int>> perms_;  // faithful record, one per element
};

/// Partition of a group into conjugacy classes. Classes are ordered by their
/// least element, which is also the representative.
struct ConjugacyData {
  std::vector<std::vector<int>> classes;
  std::vector<int> representatives;
  std::vector<int> class_of;  // element id -> class index
};

ConjugacyData conjugacy_classes(const FiniteGroup& g);

/// A subgroup presented as an abstract group together with its inclusion into
/// the parent; embedding[0] == 0 always.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> embedding;  // subgroup id -> parent id, strictly increasing
};

/// Wraps a subset (which must be closed under mul and inverse) as a Subgroup.
Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<int> elements);

/// Z(x) = {h : hx = xh}. Throws InputError on an invalid element id.
Subgroup centralizer(const FiniteGroup& g, int x);

/// One subgroup <x> per distinct generated subgroup, ordered by
/// (order, element list).
std::vector<Subgroup> cyclic_subgroups(const FiniteGroup& g);

/// Left cosets of sub.group inside g, each sorted, ordered by least member.
std::vector<std::vector<int>> left_cosets(const FiniteGroup& g, const Subgroup& sub);

/// Exact backtracking isomorphism test with element-order-profile pruning.
/// Throws CapabilityError when either order exceeds the bound.
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                    int order_bound = kIsomorphismOrderBound);

/// Like are_isomorphic but returns the witness map a-id -> b-id when one exists.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                 int order_bound = kIsomorphismOrderBound);

}  // namespace orb
