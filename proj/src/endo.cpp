#include "grpd/endo.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "grpd/errors.hpp"

namespace grpd {

namespace {

struct Dsu {
  std::vector<int> parent;

  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

/// Orbits of the isotropy group at b acting diagonally on fiber(b)².
CentralizerComponent base_pair_orbits(const FiniteGroupoid& g, const GSet& x, int b) {
  CentralizerComponent cc;
  cc.base = b;
  cc.fiber = x.fiber[static_cast<std::size_t>(b)];
  const int F = cc.fiber;
  Dsu dsu(F * F);
  for (int e : g.loops_at(b)) {
    const auto& a = x.act[static_cast<std::size_t>(e)];
    for (int p = 0; p < F; ++p)
      for (int q = 0; q < F; ++q)
        dsu.unite(p * F + q, a[static_cast<std::size_t>(p)] * F + a[static_cast<std::size_t>(q)]);
  }
  cc.cell_orbit.assign(static_cast<std::size_t>(F) * F, -1);
  std::map<int, int> root_index;  // root (= smallest member) -> orbit id
  for (int cell = 0; cell < F * F; ++cell) {
    int root = dsu.find(cell);
    auto [it, fresh] = root_index.try_emplace(root, static_cast<int>(cc.orbit_cells.size()));
    if (fresh) cc.orbit_cells.emplace_back();
    cc.cell_orbit[static_cast<std::size_t>(cell)] = it->second;
    cc.orbit_cells[static_cast<std::size_t>(it->second)].emplace_back(cell / F, cell % F);
  }
  return cc;
}

}  // namespace

SCAlgebra<Rational> groupoid_algebra(const Groupoid& g) {
  const int m = g->num_morphisms();
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) labels.push_back(g->morphism_name(i));
  VectorQ unit = VectorQ::Zero(m);
  for (int x = 0; x < g->num_objects(); ++x) unit(g->identity(x)) = Rational(1);
  return SCAlgebra<Rational>::from_products(
      std::move(labels), std::move(unit), [&g](int i, int j) -> SparseVec<Rational> {
        if (!g->composable(i, j)) return {};
        return {{g->compose(i, j), Rational(1)}};
      });
}

MatrixQ perm_matrix(const GSet& x, int m) {
  const FiniteGroupoid& g = *x.base;
  const auto& a = x.act[static_cast<std::size_t>(m)];
  MatrixQ p = MatrixQ::Zero(x.fiber[static_cast<std::size_t>(g.cod(m))],
                            x.fiber[static_cast<std::size_t>(g.dom(m))]);
  for (int q = 0; q < static_cast<int>(a.size()); ++q) p(a[static_cast<std::size_t>(q)], q) = Rational(1);
  return p;
}

CentralizerAlgebra centralizer_algebra(const Groupoid& g, const GSet& x) {
  if (x.base != g)
    throw InvariantViolationError("centralizer_algebra: G-set was built over a different groupoid");
  ConnectedComponents comps = connected_components(*g);

  CentralizerAlgebra out;
  Index total = 0;
  for (int c = 0; c < comps.count; ++c) {
    CentralizerComponent cc = base_pair_orbits(*g, x, comps.representative[static_cast<std::size_t>(c)]);
    cc.component = c;
    cc.offset = total;
    total += static_cast<Index>(cc.orbit_cells.size());
    out.components.push_back(std::move(cc));
  }

  // Per orbit, cells indexed by their first coordinate: used to stream the
  // sparse matrix product of two indicator matrices.
  std::vector<std::vector<std::vector<std::vector<int>>>> by_row(out.components.size());
  for (std::size_t c = 0; c < out.components.size(); ++c) {
    const auto& cc = out.components[c];
    by_row[c].resize(cc.orbit_cells.size());
    for (std::size_t o = 0; o < cc.orbit_cells.size(); ++o) {
      by_row[c][o].resize(static_cast<std::size_t>(cc.fiber));
      for (const auto& [p, q] : cc.orbit_cells[o])
        by_row[c][o][static_cast<std::size_t>(p)].push_back(q);
    }
  }

  std::vector<std::string> labels;
  VectorQ unit = VectorQ::Zero(total);
  for (const auto& cc : out.components) {
    for (std::size_t o = 0; o < cc.orbit_cells.size(); ++o) {
      labels.push_back("c" + std::to_string(cc.component) + ":o" + std::to_string(o));
      // The identity matrix is the sum of the all-diagonal orbits.
      const auto& [p, q] = cc.orbit_cells[o].front();
      if (p == q) unit(cc.offset + static_cast<Index>(o)) = Rational(1);
    }
  }

  auto component_of_basis = [&](int i) {
    std::size_t c = 0;
    while (c + 1 < out.components.size() && out.components[c + 1].offset <= i) ++c;
    return c;
  };

  out.algebra = SCAlgebra<Rational>::from_products(
      std::move(labels), std::move(unit),
      [&](int i, int j) -> SparseVec<Rational> {
        std::size_t c = component_of_basis(i);
        if (c != component_of_basis(j)) return {};
        const auto& cc = out.components[c];
        int oi = i - static_cast<int>(cc.offset);
        int oj = j - static_cast<int>(cc.offset);
        const int F = cc.fiber;
        std::unordered_map<int, long long> weight;
        for (const auto& [p, r] : cc.orbit_cells[static_cast<std::size_t>(oi)])
          for (int q : by_row[c][static_cast<std::size_t>(oj)][static_cast<std::size_t>(r)])
            ++weight[p * F + q];
        // Re-expand over orbits; the weight must be constant on each orbit.
        std::map<int, std::pair<long long, std::size_t>> per_orbit;  // orbit -> (w, #cells seen)
        for (const auto& [cell, w] : weight) {
          int o = cc.cell_orbit[static_cast<std::size_t>(cell)];
          auto [it, fresh] = per_orbit.try_emplace(o, std::make_pair(w, std::size_t{0}));
          if (!fresh && it->second.first != w)
            throw InvariantViolationError("orbit product weight is not orbit-constant");
          ++it->second.second;
        }
        SparseVec<Rational> terms;
        for (const auto& [o, wc] : per_orbit) {
          if (wc.second != cc.orbit_cells[static_cast<std::size_t>(o)].size())
            throw InvariantViolationError("orbit product weight is not orbit-constant");
          terms.emplace_back(static_cast<int>(cc.offset) + o, Rational(wc.first));
        }
        return terms;
      });
  return out;
}

OrbitDimension dimension_via_orbits(const Groupoid& g, const GSet& x) {
  ConnectedComponents comps = connected_components(*g);
  OrbitDimension d;
  for (int c = 0; c < comps.count; ++c) {
    int b = comps.representative[static_cast<std::size_t>(c)];
    const int F = x.fiber[static_cast<std::size_t>(b)];
    Dsu dsu(F * F);
    for (int e : g->loops_at(b)) {
      const auto& a = x.act[static_cast<std::size_t>(e)];
      for (int p = 0; p < F; ++p)
        for (int q = 0; q < F; ++q)
          dsu.unite(p * F + q, a[static_cast<std::size_t>(p)] * F + a[static_cast<std::size_t>(q)]);
    }
    Index count = 0;
    for (int cell = 0; cell < F * F; ++cell)
      if (dsu.find(cell) == cell) ++count;
    d.per_component.push_back(count);
    d.total += count;
  }
  return d;
}

YoshidaAlgebra yoshida_algebra(const Groupoid& g, const Transversal& t, int subgroup_bound) {
  YoshidaAlgebra y;
  y.omega = omega(g, t, subgroup_bound);
  y.omega_sq = gset_product(y.omega.set, y.omega.set);
  y.cent = centralizer_algebra(g, y.omega_sq);
  return y;
}

OrbitDimension yoshida_dimension(const Groupoid& g, const Transversal& t, int subgroup_bound) {
  OmegaSet om = omega(g, t, subgroup_bound);
  GSet sq = gset_product(om.set, om.set);
  return dimension_via_orbits(g, sq);
}

MatrixQ IntertwinerSpace::theta(Index basis_idx, int object) const {
  const int F = fiber[static_cast<std::size_t>(object)];
  MatrixQ m(F, F);
  Index off = offset[static_cast<std::size_t>(object)];
  for (int p = 0; p < F; ++p)
    for (int q = 0; q < F; ++q) m(p, q) = basis.cols(off + p * F + q, basis_idx);
  return m;
}

IntertwinerSpace naive_intertwiners(const Groupoid& g, const GSet& x, Index max_unknowns) {
  if (x.base != g)
    throw InvariantViolationError("naive_intertwiners: G-set was built over a different groupoid");
  IntertwinerSpace s;
  s.fiber = x.fiber;
  s.offset.resize(x.fiber.size());
  Index n = 0;
  for (std::size_t i = 0; i < x.fiber.size(); ++i) {
    s.offset[i] = n;
    n += static_cast<Index>(x.fiber[i]) * x.fiber[i];
  }
  s.unknowns = n;
  if (n > max_unknowns)
    throw BoundExceededError("naive intertwiner bound: " + std::to_string(n) +
                             " unknowns exceed " + std::to_string(max_unknowns));

  IncrementalKernel<Rational> acc(n);
  for (int m = 0; m < g->num_morphisms(); ++m) {
    int dx = g->dom(m), cy = g->cod(m);
    if (m == g->identity(dx)) continue;
    const auto& a = x.act[static_cast<std::size_t>(m)];
    const int fx = x.fiber[static_cast<std::size_t>(dx)];
    for (int p = 0; p < fx; ++p)
      for (int q = 0; q < fx; ++q) {
        // Naturality square at (p, q): θ_y(m·p, m·q) = θ_x(p, q).
        Index vy = s.offset[static_cast<std::size_t>(cy)] +
                   a[static_cast<std::size_t>(p)] * x.fiber[static_cast<std::size_t>(cy)] +
                   a[static_cast<std::size_t>(q)];
        Index vx = s.offset[static_cast<std::size_t>(dx)] + p * fx + q;
        if (vy == vx) continue;
        acc.add_row({{vy, Rational(1)}, {vx, Rational(-1)}});
      }
  }
  s.basis = acc.kernel_canonical();
  return s;
}

SCAlgebra<Rational> intertwiner_algebra(const IntertwinerSpace& s, const GSet& x) {
  const Index d = s.basis.dim();
  const int nobj = static_cast<int>(x.fiber.size());

  // Sparse cell lists per basis family and object, plus a first-coordinate
  // index for streaming the products.
  struct Cell {
    int p, q;
    Rational c;
  };
  std::vector<std::vector<std::vector<Cell>>> cells(static_cast<std::size_t>(d));
  std::vector<std::vector<std::vector<std::vector<std::pair<int, Rational>>>>> by_row(
      static_cast<std::size_t>(d));
  for (Index a = 0; a < d; ++a) {
    cells[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(nobj));
    by_row[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(nobj));
    for (int obj = 0; obj < nobj; ++obj) {
      const int F = x.fiber[static_cast<std::size_t>(obj)];
      by_row[static_cast<std::size_t>(a)][static_cast<std::size_t>(obj)].resize(
          static_cast<std::size_t>(F));
      for (int p = 0; p < F; ++p)
        for (int q = 0; q < F; ++q) {
          const Rational& c = s.basis.cols(s.offset[static_cast<std::size_t>(obj)] + p * F + q, a);
          if (c == Rational(0)) continue;
          cells[static_cast<std::size_t>(a)][static_cast<std::size_t>(obj)].push_back({p, q, c});
          by_row[static_cast<std::size_t>(a)][static_cast<std::size_t>(obj)]
                [static_cast<std::size_t>(p)]
                    .emplace_back(q, c);
        }
    }
  }

  std::vector<std::string> labels;
  for (Index i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));

  // The identity family: θ_x = I everywhere.
  VectorQ ident = VectorQ::Zero(s.unknowns);
  for (int obj = 0; obj < nobj; ++obj) {
    const int F = x.fiber[static_cast<std::size_t>(obj)];
    for (int p = 0; p < F; ++p) ident(s.offset[static_cast<std::size_t>(obj)] + p * F + p) = Rational(1);
  }
  VectorQ unit = s.basis.coords(ident);

  return SCAlgebra<Rational>::from_products(
      std::move(labels), std::move(unit),
      [&, d, nobj](int ai, int bi) -> SparseVec<Rational> {
        // Objectwise matrix product, accumulated sparsely.
        std::map<Index, Rational> w;
        for (int obj = 0; obj < nobj; ++obj) {
          const int F = x.fiber[static_cast<std::size_t>(obj)];
          for (const auto& cell : cells[static_cast<std::size_t>(ai)][static_cast<std::size_t>(obj)])
            for (const auto& [q, c2] :
                 by_row[static_cast<std::size_t>(bi)][static_cast<std::size_t>(obj)]
                       [static_cast<std::size_t>(cell.q)])
              w[s.offset[static_cast<std::size_t>(obj)] + cell.p * F + q] += cell.c * c2;
        }
        // Coordinates by pivot readoff, then a sparse residual check.
        VectorQ coords = VectorQ::Zero(d);
        for (Index j = 0; j < d; ++j) {
          auto it = w.find(s.basis.pivot_rows[static_cast<std::size_t>(j)]);
          if (it != w.end()) coords(j) = it->second;
        }
        std::map<Index, Rational> residual = w;
        for (Index j = 0; j < d; ++j) {
          if (coords(j) == Rational(0)) continue;
          for (int obj = 0; obj < nobj; ++obj) {
            const int F = x.fiber[static_cast<std::size_t>(obj)];
            for (const auto& cell :
                 cells[static_cast<std::size_t>(j)][static_cast<std::size_t>(obj)])
              residual[s.offset[static_cast<std::size_t>(obj)] + cell.p * F + cell.q] -=
                  coords(j) * cell.c;
          }
        }
        for (const auto& [idx, v] : residual)
          if (!(v == Rational(0)))
            throw InvariantViolationError(
                "intertwiner product left the intertwiner space (coordinate " +
                std::to_string(idx) + ")");
        SparseVec<Rational> out;
        for (Index j = 0; j < d; ++j)
          if (!(coords(j) == Rational(0))) out.emplace_back(static_cast<int>(j), coords(j));
        return out;
      });
}

std::vector<MatrixQ> transport_center(const MatrixQ& theta_base, const Groupoid& g,
                                      const Transversal& t, const GSet& x) {
  ConnectedComponents comps = connected_components(*g);
  if (comps.count != 1)
    throw NotConnectedError("transport requires a connected groupoid, found " +
                            std::to_string(comps.count) + " components");
  check_transversal(*g, t);
  const int b = t.base[0];
  const int F = x.fiber[static_cast<std::size_t>(b)];
  if (theta_base.rows() != F || theta_base.cols() != F)
    throw DimensionMismatchError("base endomorphism has wrong shape for the base fiber");

  for (int e : g->loops_at(b)) {
    const auto& a = x.act[static_cast<std::size_t>(e)];
    for (int p = 0; p < F; ++p)
      for (int q = 0; q < F; ++q)
        if (!(theta_base(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(q)]) ==
              theta_base(p, q)))
          throw NotCentralError("base endomorphism is not equivariant under loop " +
                                g->morphism_name(e));
  }
  // Central in End_{G_b}: must commute with every orbit indicator.
  CentralizerComponent orbs = base_pair_orbits(*g, x, b);
  for (const auto& cells : orbs.orbit_cells) {
    MatrixQ ind = MatrixQ::Zero(F, F);
    for (const auto& [p, q] : cells) ind(p, q) = Rational(1);
    MatrixQ lhs = theta_base * ind;
    MatrixQ rhs = ind * theta_base;
    if (!is_zero_matrix<Rational>(lhs - rhs))
      throw NotCentralError("base endomorphism is not central in the base orbit algebra");
  }

  std::vector<MatrixQ> family(static_cast<std::size_t>(g->num_objects()));
  for (int y = 0; y < g->num_objects(); ++y) {
    const auto& a = x.act[static_cast<std::size_t>(t.connector[static_cast<std::size_t>(y)])];
    MatrixQ m = MatrixQ::Zero(x.fiber[static_cast<std::size_t>(y)], x.fiber[static_cast<std::size_t>(y)]);
    for (int p = 0; p < F; ++p)
      for (int q = 0; q < F; ++q)
        m(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(q)]) = theta_base(p, q);
    family[static_cast<std::size_t>(y)] = std::move(m);
  }

  for (int m = 0; m < g->num_morphisms(); ++m) {
    MatrixQ p = perm_matrix(x, m);
    MatrixQ lhs = p * family[static_cast<std::size_t>(g->dom(m))];
    MatrixQ rhs = family[static_cast<std::size_t>(g->cod(m))] * p;
    if (!is_zero_matrix<Rational>(lhs - rhs))
      throw InvariantViolationError("transported family is not natural at " + g->morphism_name(m));
  }
  return family;
}

TransportIso center_transport_iso(const Groupoid& g, const Transversal& t, const GSet& x,
                                  Index intertwiner_bound) {
  ConnectedComponents comps = connected_components(*g);
  if (comps.count != 1)
    throw NotConnectedError("center transport requires a connected groupoid");

  TransportIso iso;
  CentralizerAlgebra cent = centralizer_algebra(g, x);
  const CentralizerComponent& cc = cent.components[0];
  iso.source = center(cent.algebra);

  IntertwinerSpace ispace = naive_intertwiners(g, x, intertwiner_bound);
  iso.end_dim = ispace.basis.dim();
  SCAlgebra<Rational> end_alg = intertwiner_algebra(ispace, x);
  iso.target = center(end_alg);

  const int F = cc.fiber;
  iso.map.matrix = MatrixQ::Zero(iso.target.dim(), iso.source.dim());
  for (Index a = 0; a < iso.source.dim(); ++a) {
    VectorQ z = iso.source.basis.cols.col(a);  // over orbit indicators
    MatrixQ theta = MatrixQ::Zero(F, F);
    for (Index o = 0; o < static_cast<Index>(cc.orbit_cells.size()); ++o) {
      if (z(o) == Rational(0)) continue;
      for (const auto& [p, q] : cc.orbit_cells[static_cast<std::size_t>(o)]) theta(p, q) += z(o);
    }
    std::vector<MatrixQ> family = transport_center(theta, g, t, x);
    VectorQ packed = VectorQ::Zero(ispace.unknowns);
    for (int obj = 0; obj < static_cast<int>(x.fiber.size()); ++obj) {
      const int fy = x.fiber[static_cast<std::size_t>(obj)];
      for (int p = 0; p < fy; ++p)
        for (int q = 0; q < fy; ++q)
          packed(ispace.offset[static_cast<std::size_t>(obj)] + p * fy + q) =
              family[static_cast<std::size_t>(obj)](p, q);
    }
    iso.map.matrix.col(a) = iso.target.basis.coords(ispace.basis.coords(packed));
  }
  iso.report = verify_ring_map(iso.map, iso.source.algebra, iso.target.algebra);
  return iso;
}

namespace {

BlockCenterDecomposition block_center_iso(CenterData<Rational> whole,
                                          std::vector<CenterData<Rational>> parts,
                                          const std::vector<std::vector<Index>>& part_indices) {
  BlockCenterDecomposition d;
  d.whole = std::move(whole);
  d.parts = std::move(parts);

  std::vector<const SCAlgebra<Rational>*> ptrs;
  ptrs.reserve(d.parts.size());
  for (const auto& p : d.parts) ptrs.push_back(&p.algebra);
  d.product = direct_product(ptrs);

  d.map.matrix = MatrixQ::Zero(d.product.algebra.dim(), d.whole.dim());
  for (Index a = 0; a < d.whole.dim(); ++a) {
    VectorQ z = d.whole.basis.cols.col(a);
    for (std::size_t t = 0; t < d.parts.size(); ++t) {
      VectorQ v = VectorQ::Zero(static_cast<Index>(part_indices[t].size()));
      for (std::size_t k = 0; k < part_indices[t].size(); ++k) v(static_cast<Index>(k)) = z(part_indices[t][k]);
      d.map.matrix.col(a).segment(d.product.offset[t], d.parts[t].dim()) =
          d.parts[t].basis.coords(v);
    }
  }
  d.report = verify_ring_map(d.map, d.whole.algebra, d.product.algebra);
  return d;
}

}  // namespace

BlockCenterDecomposition center_decomposition(const Groupoid& g) {
  CenterData<Rational> whole = center(groupoid_algebra(g));
  ConnectedComponents comps = connected_components(*g);
  std::vector<CenterData<Rational>> parts;
  std::vector<std::vector<Index>> indices;
  for (int c = 0; c < comps.count; ++c) {
    SubgroupoidView view = component_subgroupoid(g, c);
    parts.push_back(center(groupoid_algebra(view.sub)));
    std::vector<Index> idx;
    idx.reserve(view.morphism_in_parent.size());
    for (int m : view.morphism_in_parent) idx.push_back(m);
    indices.push_back(std::move(idx));
  }
  return block_center_iso(std::move(whole), std::move(parts), indices);
}

BlockCenterDecomposition yoshida_center_decomposition(const Groupoid& g, const Transversal& t,
                                                      int subgroup_bound) {
  YoshidaAlgebra whole_y = yoshida_algebra(g, t, subgroup_bound);
  CenterData<Rational> whole = center(whole_y.algebra());

  std::vector<CenterData<Rational>> parts;
  std::vector<std::vector<Index>> indices;
  for (std::size_t c = 0; c < whole_y.cent.components.size(); ++c) {
    const CentralizerComponent& cc = whole_y.cent.components[c];
    SubgroupoidView view = isotropy_subgroupoid(g, cc.base);
    YoshidaAlgebra part_y = yoshida_algebra(view.sub, make_transversal(*view.sub), subgroup_bound);
    if (part_y.algebra().dim() != static_cast<Index>(cc.orbit_cells.size()))
      throw InvariantViolationError("per-component Yoshida block dimension mismatch");
    parts.push_back(center(part_y.algebra()));
    std::vector<Index> idx;
    for (Index k = 0; k < static_cast<Index>(cc.orbit_cells.size()); ++k)
      idx.push_back(cc.offset + k);
    indices.push_back(std::move(idx));
  }
  return block_center_iso(std::move(whole), std::move(parts), indices);
}

EndCenterDecomposition end_center_decomposition(const Groupoid& g, const GSet& s,
                                                Index intertwiner_bound) {
  EndCenterDecomposition d;
  IntertwinerSpace ispace = naive_intertwiners(g, s, intertwiner_bound);
  d.end_dim = ispace.basis.dim();
  SCAlgebra<Rational> end_alg = intertwiner_algebra(ispace, s);
  d.whole = center(end_alg);

  ConnectedComponents comps = connected_components(*g);
  std::vector<CentralizerComponent> part_orbits;
  for (int c = 0; c < comps.count; ++c) {
    int b = comps.representative[static_cast<std::size_t>(c)];
    SubgroupoidView view = isotropy_subgroupoid(g, b);
    GSet sb = restrict(s, view);
    CentralizerAlgebra cent = centralizer_algebra(view.sub, sb);
    part_orbits.push_back(cent.components[0]);
    part_orbits.back().base = b;  // record the parent object
    d.parts.push_back(center(cent.algebra));
  }

  std::vector<const SCAlgebra<Rational>*> ptrs;
  for (const auto& p : d.parts) ptrs.push_back(&p.algebra);
  d.product = direct_product(ptrs);

  d.map.matrix = MatrixQ::Zero(d.product.algebra.dim(), d.whole.dim());
  for (Index a = 0; a < d.whole.dim(); ++a) {
    // The natural family of this center element, evaluated at each base.
    VectorQ e_coords = d.whole.basis.cols.col(a);
    for (std::size_t c = 0; c < part_orbits.size(); ++c) {
      const CentralizerComponent& po = part_orbits[c];
      const int F = po.fiber;
      MatrixQ theta = MatrixQ::Zero(F, F);
      for (Index ei = 0; ei < e_coords.rows(); ++ei) {
        if (e_coords(ei) == Rational(0)) continue;
        theta += e_coords(ei) * ispace.theta(ei, po.base);
      }
      // Express θ_b over the orbit indicators: constant on each orbit.
      VectorQ coeffs(static_cast<Index>(po.orbit_cells.size()));
      for (std::size_t o = 0; o < po.orbit_cells.size(); ++o) {
        const auto& first = po.orbit_cells[o].front();
        coeffs(static_cast<Index>(o)) = theta(first.first, first.second);
        for (const auto& [p, q] : po.orbit_cells[o])
          if (!(theta(p, q) == coeffs(static_cast<Index>(o))))
            throw InvariantViolationError("restricted endomorphism is not orbit-constant");
      }
      d.map.matrix.col(a).segment(d.product.offset[c], d.parts[c].dim()) =
          d.parts[c].basis.coords(coeffs);
    }
  }
  d.report = verify_ring_map(d.map, d.whole.algebra, d.product.algebra);
  return d;
}

}  // namespace grpd
