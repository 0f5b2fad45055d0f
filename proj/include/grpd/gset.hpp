#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd {

/// A finite action of a groupoid: one fiber of points per object, and for
/// each morphism m: x -> y a map fiber(x) -> fiber(y), functorial in m.
struct GSet {
  Groupoid base;
  std::vector<int> fiber;                        // per object: #points
  std::vector<std::vector<int>> act;             // per morphism
  std::vector<std::vector<std::string>> labels;  // per object, may be empty

  int total_points() const;
  std::string label(int object, int point) const;

  /// Exhaustive functoriality audit: identities act as identity, action maps
  /// land in range, and act(g∘f) == act(g)∘act(f) for every composable pair.
  /// Returns a human-readable description of the first violation, or empty.
  std::string functorial_violation() const;
  /// Same audit, throwing InvariantViolationError on failure.
  void check_functorial() const;
};

struct PointRef {
  int object;
  int point;

  friend bool operator<(const PointRef& a, const PointRef& b) {
    return a.object < b.object || (a.object == b.object && a.point < b.point);
  }
  friend bool operator==(const PointRef& a, const PointRef& b) {
    return a.object == b.object && a.point == b.point;
  }
};

/// Orbits of the groupoid action, each sorted, listed by smallest member.
std::vector<std::vector<PointRef>> orbits(const GSet& x);

/// A G-set with a unital, associative fiberwise multiplication that every
/// action map respects (a monoid object in G-sets).
struct GMonoid {
  GSet set;
  std::vector<int> unit;                          // per object
  std::vector<std::vector<std::vector<int>>> mul; // per object table

  void check_monoid() const;
};

/// The conjugation monoid: fiber(x) is the loop set at x with its group
/// multiplication, morphisms act by conjugation m·u = m∘u∘m⁻¹.
GMonoid conjugation_monoid(const Groupoid& g);

/// Subgroup of a LocalGroup, as a sorted list of local element indices.
struct Subgroup {
  std::vector<int> elems;

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int local) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elems == b.elems; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;  // same size: lexicographic
  }
};

Subgroup closure(const LocalGroup& lg, std::vector<int> generators);
bool is_subgroup(const LocalGroup& lg, const Subgroup& h);

/// All subgroups, sorted by order then lexicographic element sets. Guarded by
/// the ambient order bound (desk scale).
std::vector<Subgroup> enumerate_subgroups(const LocalGroup& lg, int max_order = 48);

/// Left cosets uH, each sorted, ordered by smallest member; the first element
/// of each coset is its representative. Throws NotSubgroupError.
std::vector<std::vector<int>> left_cosets(const LocalGroup& lg, const Subgroup& h);

std::vector<int> centralizer(const LocalGroup& lg, const Subgroup& h);
Subgroup conjugate_subgroup(const LocalGroup& lg, const Subgroup& h, int g_local);

/// Elements of the isotropy group fixing the given point.
Subgroup stabilizer(const GSet& x, const LocalGroup& iso, int point);

/// The Ω construction: per component, the disjoint union over all subgroups
/// H of the base isotropy group of the coset spaces 𝒢_x/H, glued along the
/// transversal. Subgroups at non-base objects are the λ-conjugates of the
/// base list, so the subgroup slot of a point is a transport invariant.
struct OmegaSet {
  GSet set;
  Transversal transversal;
  std::vector<int> subgroup_count;                       // per component
  std::vector<std::vector<std::pair<int, int>>> decomp;  // per object: (sub, coset)
  std::vector<std::vector<std::vector<int>>> coset_rep;  // per object, per sub: rep loop (global)
};

OmegaSet omega(const Groupoid& g, const Transversal& t, int subgroup_bound = 48);

/// Fiberwise product with the diagonal action.
GSet gset_product(const GSet& a, const GSet& b);

/// Restriction of an action along a sub-groupoid embedding.
GSet restrict(const GSet& x, const SubgroupoidView& view);

}  // namespace grpd
