#pragma once

#include <utility>
#include <vector>

#include "grpd/gset.hpp"
#include "grpd/scalgebra.hpp"

namespace grpd {

/// One basis class [x; H, a] of the crossed Burnside ring: a component with
/// base object x, a subgroup H of the base isotropy group, and a label a in
/// the centralizer C_{𝒢_x}(H), the pair taken up to simultaneous conjugacy.
/// The stored pair is the canonical orbit representative.
struct CrossedClass {
  int component = 0;
  int base = 0;
  Subgroup sub;    // local element indices at the base
  int label = 0;   // local element index, lies in C(sub)
};

/// All classes, sorted by component, then subgroup order descending, then
/// subgroup element set, then label.
struct CrossedClassList {
  std::vector<CrossedClass> classes;
  std::vector<Index> component_offset;  // per component, plus a total entry

  Index size() const { return static_cast<Index>(classes.size()); }

  /// Index of the class with this canonical representative; throws
  /// ClassListMismatchError when absent.
  Index find(int component, const Subgroup& sub, int label) const;
};

/// Canonical representative of the conjugacy orbit of (H, a): the orbit
/// member with the lexicographically smallest (element set, label).
std::pair<Subgroup, int> canonical_pair(const LocalGroup& lg, const Subgroup& sub, int label);

CrossedClassList enumerate_classes(const Groupoid& g, const Transversal& t, int subgroup_bound = 48);

/// A G-set with a loop-valued label on every point, equivariant under
/// conjugation: θ(m·p) = m θ(p) m⁻¹.
struct LabeledGSet {
  GSet set;
  std::vector<std::vector<int>> point_label;  // per object per point: global loop id

  void check_equivariant() const;
};

/// The standard model of a class: fiber(y) = 𝒢(x,y)/H with g·(nH) = (g∘n)H
/// and θ(nH) = n a n⁻¹. Fibers away from the class's component are empty.
LabeledGSet standard_model(const Groupoid& g, const CrossedClass& cls);

/// Fiberwise product with pointwise multiplied labels.
LabeledGSet labeled_product(const LabeledGSet& a, const LabeledGSet& b);

/// Orbit decomposition of a labeled G-set into class coefficients: each
/// orbit contributes its base-point stabilizer and label, canonicalized.
VectorQ normalize(const LabeledGSet& s, const Groupoid& g, const Transversal& t,
                  const CrossedClassList& classes);

/// Product of two classes through the construction itself: standard models,
/// labeled product, normalize.
SparseVec<Rational> multiply_classes(const Groupoid& g, const Transversal& t,
                                     const CrossedClassList& classes, Index i, Index j);

/// Independent product for the same pair by double-coset enumeration at the
/// base group: [H,a][K,b] = Σ_{HgK} [H ∩ gKg⁻¹, a·gbg⁻¹]. Classes in
/// different components multiply to zero.
SparseVec<Rational> multiply_oracle(const Groupoid& g, const CrossedClassList& classes, Index i,
                                    Index j);

struct BurnsideRing {
  CrossedClassList classes;
  SCAlgebra<Rational> algebra;
};

BurnsideRing burnside_ring(const Groupoid& g, const Transversal& t, int subgroup_bound = 48);

/// B^c(𝒢) ≅ ∏ B^c(𝒢_{x_i}) along the component blocks of the class list.
struct BurnsideDecomposition {
  BurnsideRing whole;
  std::vector<BurnsideRing> parts;
  ProductAlgebra<Rational> product;
  AlgebraMap<Rational> map;
  RingMapReport report;
};

BurnsideDecomposition burnside_decomposition(const Groupoid& g, const Transversal& t,
                                             int subgroup_bound = 48);

/// The mark map ρ: B^c(𝒢) -> k[𝒢], [x; H, a] ↦ Σ_y Σ_{nH ∈ 𝒢(x,y)/H} n a n⁻¹
/// (the label sum over the standard model), with every verification the
/// construction admits: image centrality against an independently computed
/// Z(k[𝒢]), unitality and multiplicativity against the generic product, and
/// rank against dim Z.
struct RhoData {
  CrossedClassList classes;
  MatrixQ matrix;               // |𝒢₁| x #classes
  CenterData<Rational> center;  // of k[𝒢]
  bool image_central = false;
  Index rank = 0;
  bool surjective_onto_center = false;
  RingMapReport report;  // as an algebra map B^c(𝒢) -> k[𝒢]
};

RhoData rho(const Groupoid& g, const Transversal& t, int subgroup_bound = 48);

}  // namespace grpd
