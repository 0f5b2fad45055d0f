#include "grpd/burnside.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "grpd/endo.hpp"
#include "grpd/errors.hpp"

namespace grpd {

Index CrossedClassList::find(int component, const Subgroup& sub, int label) const {
  Index lo = component_offset[static_cast<std::size_t>(component)];
  Index hi = component_offset[static_cast<std::size_t>(component) + 1];
  for (Index i = lo; i < hi; ++i) {
    const CrossedClass& c = classes[static_cast<std::size_t>(i)];
    if (c.sub == sub && c.label == label) return i;
  }
  throw ClassListMismatchError("no class with subgroup order " + std::to_string(sub.order()) +
                               " and label " + std::to_string(label) + " in component " +
                               std::to_string(component));
}

std::pair<Subgroup, int> canonical_pair(const LocalGroup& lg, const Subgroup& sub, int label) {
  Subgroup best_sub = sub;
  int best_label = label;
  for (int u = 0; u < lg.order(); ++u) {
    Subgroup hs = conjugate_subgroup(lg, sub, u);
    int a =
        lg.mul[static_cast<std::size_t>(lg.mul[static_cast<std::size_t>(u)][static_cast<std::size_t>(
            label)])][static_cast<std::size_t>(lg.inv[static_cast<std::size_t>(u)])];
    if (hs.elems < best_sub.elems ||
        (hs.elems == best_sub.elems && a < best_label)) {
      best_sub = std::move(hs);
      best_label = a;
    }
  }
  return {best_sub, best_label};
}

CrossedClassList enumerate_classes(const Groupoid& g, const Transversal& t, int subgroup_bound) {
  check_transversal(*g, t);
  CrossedClassList out;
  out.component_offset.push_back(0);
  for (std::size_t c = 0; c < t.base.size(); ++c) {
    int b = t.base[c];
    LocalGroup lg = isotropy_group(*g, b);
    std::vector<Subgroup> subs = enumerate_subgroups(lg, subgroup_bound);
    std::set<std::pair<std::vector<int>, int>> seen;
    std::vector<CrossedClass> block;
    for (const Subgroup& h : subs) {
      for (int a : centralizer(lg, h)) {
        auto [cs, cl] = canonical_pair(lg, h, a);
        if (seen.insert({cs.elems, cl}).second)
          block.push_back({static_cast<int>(c), b, std::move(cs), cl});
      }
    }
    std::sort(block.begin(), block.end(), [](const CrossedClass& x, const CrossedClass& y) {
      if (x.sub.order() != y.sub.order()) return x.sub.order() > y.sub.order();
      if (x.sub.elems != y.sub.elems) return x.sub.elems < y.sub.elems;
      return x.label < y.label;
    });
    for (auto& cls : block) out.classes.push_back(std::move(cls));
    out.component_offset.push_back(static_cast<Index>(out.classes.size()));
  }
  return out;
}

void LabeledGSet::check_equivariant() const {
  const FiniteGroupoid& g = *set.base;
  for (int m = 0; m < g.num_morphisms(); ++m) {
    int y = g.dom(m), z = g.cod(m);
    for (int p = 0; p < set.fiber[static_cast<std::size_t>(y)]; ++p) {
      int lhs = point_label[static_cast<std::size_t>(z)]
                           [static_cast<std::size_t>(set.act[static_cast<std::size_t>(m)]
                                                            [static_cast<std::size_t>(p)])];
      int rhs = g.compose(g.compose(m, point_label[static_cast<std::size_t>(y)]
                                                  [static_cast<std::size_t>(p)]),
                          g.inverse(m));
      if (lhs != rhs)
        throw EquivarianceViolationError("label of " + g.morphism_name(m) + "·(point " +
                                         std::to_string(p) + " at x" + std::to_string(y) +
                                         ") is " + g.morphism_name(lhs) + ", expected conjugate " +
                                         g.morphism_name(rhs));
    }
  }
}

LabeledGSet standard_model(const Groupoid& g, const CrossedClass& cls) {
  LocalGroup lg = isotropy_group(*g, cls.base);
  ConnectedComponents comps = connected_components(*g);
  int comp = comps.component_of[static_cast<std::size_t>(cls.base)];
  const int nobj = g->num_objects();

  std::vector<int> hs;  // H as global morphism ids
  hs.reserve(cls.sub.elems.size());
  for (int h : cls.sub.elems) hs.push_back(lg.elems[static_cast<std::size_t>(h)]);
  const int a_glob = lg.elems[static_cast<std::size_t>(cls.label)];

  LabeledGSet out;
  out.set.base = g;
  out.set.fiber.assign(static_cast<std::size_t>(nobj), 0);
  out.set.labels.resize(static_cast<std::size_t>(nobj));
  out.point_label.resize(static_cast<std::size_t>(nobj));

  std::vector<std::vector<int>> rep(static_cast<std::size_t>(nobj));
  std::vector<std::unordered_map<int, int>> point_of(static_cast<std::size_t>(nobj));
  for (int y = 0; y < nobj; ++y) {
    if (comps.component_of[static_cast<std::size_t>(y)] != comp) continue;
    for (int n : g->hom(cls.base, y)) {
      if (point_of[static_cast<std::size_t>(y)].count(n)) continue;
      int pt = static_cast<int>(rep[static_cast<std::size_t>(y)].size());
      rep[static_cast<std::size_t>(y)].push_back(n);
      for (int h : hs) point_of[static_cast<std::size_t>(y)][g->compose(n, h)] = pt;
    }
    out.set.fiber[static_cast<std::size_t>(y)] =
        static_cast<int>(rep[static_cast<std::size_t>(y)].size());
    for (int n : rep[static_cast<std::size_t>(y)]) {
      out.set.labels[static_cast<std::size_t>(y)].push_back(g->morphism_name(n) + "H");
      out.point_label[static_cast<std::size_t>(y)].push_back(
          g->compose(g->compose(n, a_glob), g->inverse(n)));
    }
  }

  out.set.act.resize(static_cast<std::size_t>(g->num_morphisms()));
  for (int m = 0; m < g->num_morphisms(); ++m) {
    int dy = g->dom(m), cy = g->cod(m);
    auto& a = out.set.act[static_cast<std::size_t>(m)];
    a.resize(static_cast<std::size_t>(out.set.fiber[static_cast<std::size_t>(dy)]));
    for (int p = 0; p < out.set.fiber[static_cast<std::size_t>(dy)]; ++p)
      a[static_cast<std::size_t>(p)] = point_of[static_cast<std::size_t>(cy)].at(
          g->compose(m, rep[static_cast<std::size_t>(dy)][static_cast<std::size_t>(p)]));
  }
  out.set.check_functorial();
  out.check_equivariant();
  return out;
}

LabeledGSet labeled_product(const LabeledGSet& a, const LabeledGSet& b) {
  LabeledGSet out;
  out.set = gset_product(a.set, b.set);
  const FiniteGroupoid& g = *out.set.base;
  out.point_label.resize(a.point_label.size());
  for (std::size_t y = 0; y < a.point_label.size(); ++y) {
    const int fb = b.set.fiber[y];
    for (int i = 0; i < a.set.fiber[y]; ++i)
      for (int j = 0; j < fb; ++j)
        out.point_label[y].push_back(
            g.compose(a.point_label[y][static_cast<std::size_t>(i)],
                      b.point_label[y][static_cast<std::size_t>(j)]));
  }
  out.check_equivariant();
  return out;
}

VectorQ normalize(const LabeledGSet& s, const Groupoid& g, const Transversal& t,
                  const CrossedClassList& classes) {
  if (s.set.base != g)
    throw InvariantViolationError("normalize: labeled G-set was built over a different groupoid");
  s.check_equivariant();

  std::vector<LocalGroup> lgs;
  lgs.reserve(t.base.size());
  for (int b : t.base) lgs.push_back(isotropy_group(*g, b));

  VectorQ v = VectorQ::Zero(classes.size());
  for (const auto& orbit : orbits(s.set)) {
    int comp = t.component_of[static_cast<std::size_t>(orbit.front().object)];
    int b = t.base[static_cast<std::size_t>(comp)];
    int p0 = -1;
    for (const PointRef& pr : orbit)
      if (pr.object == b) {
        p0 = pr.point;  // orbit is sorted, so this is the least point at b
        break;
      }
    if (p0 < 0)
      throw InvariantViolationError("orbit never visits the base of component " +
                                    std::to_string(comp));
    const LocalGroup& lg = lgs[static_cast<std::size_t>(comp)];
    Subgroup h = stabilizer(s.set, lg, p0);
    int a = lg.index_of(s.point_label[static_cast<std::size_t>(b)][static_cast<std::size_t>(p0)]);
    for (int u : h.elems)
      if (lg.mul[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)] !=
          lg.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)])
        throw InvariantViolationError("orbit label does not centralize the stabilizer");
    auto [cs, cl] = canonical_pair(lg, h, a);
    v(classes.find(comp, cs, cl)) += Rational(1);
  }
  return v;
}

SparseVec<Rational> multiply_classes(const Groupoid& g, const Transversal& t,
                                     const CrossedClassList& classes, Index i, Index j) {
  LabeledGSet prod = labeled_product(standard_model(g, classes.classes[static_cast<std::size_t>(i)]),
                                     standard_model(g, classes.classes[static_cast<std::size_t>(j)]));
  VectorQ v = normalize(prod, g, t, classes);
  SparseVec<Rational> out;
  for (Index k = 0; k < v.rows(); ++k)
    if (!(v(k) == Rational(0))) out.emplace_back(static_cast<int>(k), v(k));
  return out;
}

SparseVec<Rational> multiply_oracle(const Groupoid& g, const CrossedClassList& classes, Index i,
                                    Index j) {
  const CrossedClass& ci = classes.classes[static_cast<std::size_t>(i)];
  const CrossedClass& cj = classes.classes[static_cast<std::size_t>(j)];
  if (ci.component != cj.component) return {};
  LocalGroup lg = isotropy_group(*g, ci.base);

  std::map<Index, Rational> acc;
  std::vector<char> covered(static_cast<std::size_t>(lg.order()), 0);
  for (int gl = 0; gl < lg.order(); ++gl) {
    if (covered[static_cast<std::size_t>(gl)]) continue;
    for (int h : ci.sub.elems)
      for (int k : cj.sub.elems)
        covered[static_cast<std::size_t>(
            lg.mul[static_cast<std::size_t>(lg.mul[static_cast<std::size_t>(h)]
                                                  [static_cast<std::size_t>(gl)])]
                  [static_cast<std::size_t>(k)])] = 1;
    Subgroup gk = conjugate_subgroup(lg, cj.sub, gl);
    Subgroup inter;
    std::set_intersection(ci.sub.elems.begin(), ci.sub.elems.end(), gk.elems.begin(),
                          gk.elems.end(), std::back_inserter(inter.elems));
    int conj_b =
        lg.mul[static_cast<std::size_t>(lg.mul[static_cast<std::size_t>(gl)][static_cast<std::size_t>(
            cj.label)])][static_cast<std::size_t>(lg.inv[static_cast<std::size_t>(gl)])];
    int lbl = lg.mul[static_cast<std::size_t>(ci.label)][static_cast<std::size_t>(conj_b)];
    auto [cs, cl] = canonical_pair(lg, inter, lbl);
    acc[classes.find(ci.component, cs, cl)] += Rational(1);
  }
  SparseVec<Rational> out;
  for (const auto& [k, c] : acc) out.emplace_back(static_cast<int>(k), c);
  return out;
}

BurnsideRing burnside_ring(const Groupoid& g, const Transversal& t, int subgroup_bound) {
  BurnsideRing ring;
  ring.classes = enumerate_classes(g, t, subgroup_bound);

  std::vector<std::string> labels;
  for (const CrossedClass& c : ring.classes.classes) {
    std::string elems;
    for (std::size_t k = 0; k < c.sub.elems.size(); ++k)
      elems += (k ? "," : "") + std::to_string(c.sub.elems[k]);
    labels.push_back("c" + std::to_string(c.component) + ":H{" + elems + "}:a" +
                     std::to_string(c.label));
  }

  VectorQ unit = VectorQ::Zero(ring.classes.size());
  for (std::size_t c = 0; c < t.base.size(); ++c) {
    LocalGroup lg = isotropy_group(*g, t.base[c]);
    Subgroup full;
    for (int e = 0; e < lg.order(); ++e) full.elems.push_back(e);
    unit(ring.classes.find(static_cast<int>(c), full, lg.identity)) = Rational(1);
  }

  ring.algebra = SCAlgebra<Rational>::from_products(
      std::move(labels), std::move(unit), [&](int i, int j) -> SparseVec<Rational> {
        return multiply_classes(g, t, ring.classes, i, j);
      });
  return ring;
}

BurnsideDecomposition burnside_decomposition(const Groupoid& g, const Transversal& t,
                                             int subgroup_bound) {
  BurnsideDecomposition d;
  d.whole = burnside_ring(g, t, subgroup_bound);

  for (std::size_t c = 0; c < t.base.size(); ++c) {
    SubgroupoidView view = isotropy_subgroupoid(g, t.base[c]);
    d.parts.push_back(burnside_ring(view.sub, make_transversal(*view.sub), subgroup_bound));
    Index block = d.whole.classes.component_offset[c + 1] - d.whole.classes.component_offset[c];
    if (d.parts.back().classes.size() != block)
      throw ClassListMismatchError("component " + std::to_string(c) + " has " +
                                   std::to_string(block) + " classes in the whole ring but " +
                                   std::to_string(d.parts.back().classes.size()) +
                                   " in its isotropy ring");
  }

  std::vector<const SCAlgebra<Rational>*> ptrs;
  for (const auto& p : d.parts) ptrs.push_back(&p.algebra);
  d.product = direct_product(ptrs);

  // The class lists agree block by block, so the map is coordinate identity.
  d.map.matrix = MatrixQ::Zero(d.product.algebra.dim(), d.whole.algebra.dim());
  for (Index a = 0; a < d.whole.algebra.dim(); ++a) d.map.matrix(a, a) = Rational(1);
  d.report = verify_ring_map(d.map, d.whole.algebra, d.product.algebra);
  return d;
}

RhoData rho(const Groupoid& g, const Transversal& t, int subgroup_bound) {
  RhoData r;
  BurnsideRing ring = burnside_ring(g, t, subgroup_bound);
  r.classes = ring.classes;

  SCAlgebra<Rational> kg = groupoid_algebra(g);
  r.center = center(kg);

  r.matrix = MatrixQ::Zero(g->num_morphisms(), r.classes.size());
  for (Index idx = 0; idx < r.classes.size(); ++idx) {
    LabeledGSet model = standard_model(g, r.classes.classes[static_cast<std::size_t>(idx)]);
    for (std::size_t y = 0; y < model.point_label.size(); ++y)
      for (int lbl : model.point_label[y]) r.matrix(lbl, idx) += Rational(1);
  }

  r.image_central = true;
  for (Index idx = 0; idx < r.classes.size(); ++idx)
    if (!r.center.basis.contains(r.matrix.col(idx))) {
      r.image_central = false;
      break;
    }
  r.report = verify_ring_map(AlgebraMap<Rational>{r.matrix}, ring.algebra, kg);
  r.rank = r.report.rank;
  r.surjective_onto_center = r.image_central && r.rank == r.center.dim();
  return r;
}

}  // namespace grpd
