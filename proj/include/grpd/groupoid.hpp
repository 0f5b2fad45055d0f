#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "grpd/errors.hpp"

namespace grpd {

/// Multiplication table of a finite group. Element 0 must be the identity;
/// entry mul[i][j] is the index of the product i*j.
struct CayleyTable {
  std::vector<std::vector<int>> mul;

  int order() const { return static_cast<int>(mul.size()); }
};

CayleyTable cyclic_table(int n);
CayleyTable symmetric_table(int n);
CayleyTable klein4_table();

/// Parse the plain-text table format: optional '#' comment lines, then the
/// order n, then n rows of n indices. Throws FormatError on malformed input
/// and BadIdentityError when index 0 is not a two-sided identity.
CayleyTable parse_cayley_table(const std::string& text);
CayleyTable load_cayley_table(const std::string& path);

/// Unvalidated groupoid data, as read from input. Ids are arbitrary integers.
struct RawGroupoid {
  struct Morphism {
    int id;
    int dom;
    int cod;
  };

  std::vector<int> objects;
  std::vector<Morphism> morphisms;
  std::map<int, int> identities;              // object id -> identity morphism id
  std::vector<std::array<int, 3>> compose;    // (g, f, g∘f) by morphism id
};

/// A validated finite groupoid.
///
/// Objects and morphisms are re-indexed to 0..n-1 / 0..m-1 internally; the
/// ids from the input survive as labels for reporting. The composition
/// convention is "g after f": compose(g, f) is defined exactly when
/// dom(g) == cod(f), and then dom(g∘f) == dom(f), cod(g∘f) == cod(g).
class FiniteGroupoid {
 public:
  int num_objects() const { return static_cast<int>(identity_.size()); }
  int num_morphisms() const { return static_cast<int>(dom_.size()); }

  int dom(int m) const { return dom_[static_cast<std::size_t>(m)]; }
  int cod(int m) const { return cod_[static_cast<std::size_t>(m)]; }
  int identity(int x) const { return identity_[static_cast<std::size_t>(x)]; }
  int inverse(int m) const { return inverse_[static_cast<std::size_t>(m)]; }

  bool composable(int g, int f) const { return dom(g) == cod(f); }

  /// The composite g∘f; the pair must be composable.
  int compose(int g, int f) const {
    int r = compose_[static_cast<std::size_t>(g) * dom_.size() + static_cast<std::size_t>(f)];
    if (r < 0)
      throw InvariantViolationError("compose called on non-composable pair (" +
                                    morphism_name(g) + ", " + morphism_name(f) + ")");
    return r;
  }

  const std::vector<int>& hom(int x, int y) const {
    return hom_[static_cast<std::size_t>(x) * identity_.size() + static_cast<std::size_t>(y)];
  }

  /// Loop set at x, i.e. hom(x, x), sorted by morphism index.
  const std::vector<int>& loops_at(int x) const { return hom(x, x); }

  int object_label(int x) const { return object_labels_[static_cast<std::size_t>(x)]; }
  int morphism_label(int m) const { return morphism_labels_[static_cast<std::size_t>(m)]; }
  std::string morphism_name(int m) const { return "m" + std::to_string(morphism_label(m)); }

 private:
  friend std::shared_ptr<const FiniteGroupoid> validate_groupoid(const RawGroupoid&);

  std::vector<int> object_labels_;
  std::vector<int> morphism_labels_;
  std::vector<int> dom_, cod_;
  std::vector<int> identity_;
  std::vector<int> inverse_;
  std::vector<std::int32_t> compose_;          // m*m, -1 = non-composable
  std::vector<std::vector<int>> hom_;          // n*n hom sets
};

using Groupoid = std::shared_ptr<const FiniteGroupoid>;

/// Run the full axiom suite on raw data: resolvable ids, identities, totality
/// of composition on composable pairs (and only those), unit laws,
/// associativity over all composable triples, and two-sided inverses.
Groupoid validate_groupoid(const RawGroupoid& raw);

/// One-object groupoid from a group table (delooping).
Groupoid group_groupoid(const CayleyTable& table);

/// The pair groupoid on n objects: exactly one morphism between any two.
Groupoid pair_groupoid(int n);

Groupoid product_groupoid(const Groupoid& a, const Groupoid& b);
Groupoid disjoint_union(const std::vector<Groupoid>& parts);

struct ConnectedComponents {
  std::vector<int> component_of;     // per object
  std::vector<int> representative;   // smallest object of each component
  int count = 0;
};

ConnectedComponents connected_components(const FiniteGroupoid& g);

/// A sub-groupoid together with the embedding of its objects and morphisms
/// into the parent.
struct SubgroupoidView {
  Groupoid sub;
  std::vector<int> object_in_parent;
  std::vector<int> morphism_in_parent;
};

SubgroupoidView component_subgroupoid(const Groupoid& g, int component);
/// The isotropy group at x as a one-object sub-groupoid.
SubgroupoidView isotropy_subgroupoid(const Groupoid& g, int x);

/// Isotropy group 𝒢_x in local coordinates: element i is loop elems[i], with
/// multiplication and inverses precomputed over local indices.
struct LocalGroup {
  int object = 0;
  std::vector<int> elems;                  // global morphism ids, ascending
  std::vector<std::vector<int>> mul;       // local x local -> local
  std::vector<int> inv;                    // local -> local
  int identity = 0;                        // local index

  int order() const { return static_cast<int>(elems.size()); }
  int index_of(int global_morphism) const;
};

LocalGroup isotropy_group(const FiniteGroupoid& g, int x);

/// Connector choice: one morphism g_y from the component representative to
/// each object y, with g_base the identity. Built breadth-first; a nonzero
/// seed permutes the morphism scan order (deterministically) to exercise
/// different choices.
struct Transversal {
  std::uint64_t seed = 0;
  std::vector<int> component_of;   // per object
  std::vector<int> base;           // per component
  std::vector<int> connector;      // per object: morphism base -> object

  /// λ_{x,y} = g_y ∘ g_x⁻¹, the canonical morphism x -> y inside a component.
  int lambda(const FiniteGroupoid& g, int x, int y) const;
};

Transversal make_transversal(const FiniteGroupoid& g, std::uint64_t seed = 0);

/// Throws TransversalMismatchError unless t is a valid transversal for g.
void check_transversal(const FiniteGroupoid& g, const Transversal& t);

struct StructureIsoWitness {
  int base = 0;
  int isotropy_order = 0;
  int objects = 0;
  bool bijective = false;
  bool functorial = false;

  bool ok() const { return bijective && functorial; }
};

/// Machine check that a connected groupoid is isomorphic to 𝒢_b × Pair(𝒢₀)
/// via u ↦ (g_cod(u)⁻¹ ∘ u ∘ g_dom(u), (dom u, cod u)). Exhaustive over all
/// morphisms and composable pairs. Throws NotConnectedError on
/// multi-component input.
StructureIsoWitness structure_iso_check(const FiniteGroupoid& g, const Transversal& t);

/// Σ over components of |isotropy| * (objects in component)²; equals the
/// morphism count for every valid groupoid.
long long expected_morphism_count(const FiniteGroupoid& g);

}  // namespace grpd
