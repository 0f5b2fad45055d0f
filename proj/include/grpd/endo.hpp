#pragma once

#include <utility>
#include <vector>

#include "grpd/gset.hpp"
#include "grpd/scalgebra.hpp"

namespace grpd {

/// The groupoid algebra k[𝒢]: basis indexed by morphisms, b_g·b_f = b_{g∘f}
/// when composable and 0 otherwise, unit the sum of all identities.
SCAlgebra<Rational> groupoid_algebra(const Groupoid& g);

/// Permutation matrix of morphism m on a G-set, fiber(dom m) -> fiber(cod m).
MatrixQ perm_matrix(const GSet& x, int m);

/// Orbit-indicator basis of End_{𝒢_b}(k[fiber(b)]) for one component: the
/// orbits of the base isotropy group acting diagonally on fiber(b)².
struct CentralizerComponent {
  int component = 0;
  int base = 0;
  int fiber = 0;
  Index offset = 0;  // block start in the assembled algebra
  std::vector<std::vector<std::pair<int, int>>> orbit_cells;  // per orbit, sorted cells
  std::vector<int> cell_orbit;                                // flattened fiber² -> orbit
};

/// End_𝒢(k[X]) assembled from one orbit-indicator block per component;
/// multiplication is matrix product re-expanded over orbits.
struct CentralizerAlgebra {
  SCAlgebra<Rational> algebra;
  std::vector<CentralizerComponent> components;
};

CentralizerAlgebra centralizer_algebra(const Groupoid& g, const GSet& x);

/// Dimension of End_𝒢(k[X]) by pure orbit counting (no multiplication
/// table); per-component counts plus the total.
struct OrbitDimension {
  std::vector<Index> per_component;
  Index total = 0;
};

OrbitDimension dimension_via_orbits(const Groupoid& g, const GSet& x);

/// Y_k(𝒢) = End_𝒢(k[Ω²]) with the construction data kept around.
struct YoshidaAlgebra {
  OmegaSet omega;
  GSet omega_sq;
  CentralizerAlgebra cent;

  const SCAlgebra<Rational>& algebra() const { return cent.algebra; }
};

YoshidaAlgebra yoshida_algebra(const Groupoid& g, const Transversal& t, int subgroup_bound = 48);

/// dim Y_k(𝒢) via orbit counting only; safe even where the full structure
/// constants are out of bounds.
OrbitDimension yoshida_dimension(const Groupoid& g, const Transversal& t, int subgroup_bound = 48);

/// Basis of the natural transformations of k[X] obtained by solving every
/// naturality square as one sparse linear system — the cross-validation
/// oracle for the orbit-basis route. Guarded by a bound on the unknown count
/// Σ_x |fiber(x)|².
struct IntertwinerSpace {
  std::vector<Index> offset;  // per object: block start of θ_x, row-major
  std::vector<int> fiber;     // per object
  Index unknowns = 0;
  CanonicalBasis<Rational> basis;

  /// Unpack one basis family's component at an object as a matrix.
  MatrixQ theta(Index basis_idx, int object) const;
};

IntertwinerSpace naive_intertwiners(const Groupoid& g, const GSet& x, Index max_unknowns = 1500);

/// The intertwiner space as an algebra under objectwise composition.
SCAlgebra<Rational> intertwiner_algebra(const IntertwinerSpace& s, const GSet& x);

/// Transport a central base endomorphism along the transversal: θ_y =
/// P(g_y) θ_b P(g_y)⁻¹. Requires a connected groupoid and a θ_b lying in the
/// center of End_{𝒢_b}(k[fiber b]); naturality of the resulting family is
/// verified over every morphism.
std::vector<MatrixQ> transport_center(const MatrixQ& theta_base, const Groupoid& g,
                                      const Transversal& t, const GSet& x);

/// The transport isomorphism φ: Z(End_{𝒢_b}(X(b))) -> Z(End_𝒢(X)) for a
/// connected groupoid, with both centers computed independently and the ring
/// map verified on every basis pair.
struct TransportIso {
  CenterData<Rational> source;  // center of the base orbit algebra
  CenterData<Rational> target;  // center of the naive intertwiner algebra
  Index end_dim = 0;            // dim End_𝒢(X) from the naive solve
  AlgebraMap<Rational> map;
  RingMapReport report;
};

TransportIso center_transport_iso(const Groupoid& g, const Transversal& t, const GSet& x,
                                  Index intertwiner_bound = 1500);

/// An explicit center decomposition Z(A(𝒢)) ≅ ∏_i Z(A(𝒢_i)) where the whole
/// algebra's basis is partitioned by connected component.
struct BlockCenterDecomposition {
  CenterData<Rational> whole;
  std::vector<CenterData<Rational>> parts;
  ProductAlgebra<Rational> product;
  AlgebraMap<Rational> map;
  RingMapReport report;
};

/// Z(k[𝒢]) ≅ ∏ Z(k[𝒢_i]) via coordinate restriction to each component's
/// morphisms.
BlockCenterDecomposition center_decomposition(const Groupoid& g);

/// Z(Y(𝒢)) ≅ ∏ Z(Y(𝒢_{x_i})) over the component base isotropy groups.
BlockCenterDecomposition yoshida_center_decomposition(const Groupoid& g, const Transversal& t,
                                                      int subgroup_bound = 48);

/// Z(End_𝒢(S)) ≅ ∏ Z(End_{𝒢_{x_i}}(S(x_i))) by restriction of natural
/// families to the base objects.
struct EndCenterDecomposition {
  CenterData<Rational> whole;
  Index end_dim = 0;
  std::vector<CenterData<Rational>> parts;
  ProductAlgebra<Rational> product;
  AlgebraMap<Rational> map;
  RingMapReport report;
};

EndCenterDecomposition end_center_decomposition(const Groupoid& g, const GSet& s,
                                                Index intertwiner_bound = 1500);

}  // namespace grpd
