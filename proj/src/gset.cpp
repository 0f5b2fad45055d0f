#include "grpd/gset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "grpd/errors.hpp"

namespace grpd {

int GSet::total_points() const {
  return std::accumulate(fiber.begin(), fiber.end(), 0);
}

std::string GSet::label(int object, int point) const {
  const auto& lx = labels.empty() ? std::vector<std::string>{} : labels[static_cast<std::size_t>(object)];
  if (point < static_cast<int>(lx.size())) return lx[static_cast<std::size_t>(point)];
  return "x" + std::to_string(base->object_label(object)) + ":p" + std::to_string(point);
}

std::string GSet::functorial_violation() const {
  const FiniteGroupoid& g = *base;
  if (static_cast<int>(fiber.size()) != g.num_objects()) return "fiber count mismatch";
  if (static_cast<int>(act.size()) != g.num_morphisms()) return "action map count mismatch";
  for (int m = 0; m < g.num_morphisms(); ++m) {
    const auto& a = act[static_cast<std::size_t>(m)];
    if (static_cast<int>(a.size()) != fiber[static_cast<std::size_t>(g.dom(m))])
      return "action of " + g.morphism_name(m) + " has wrong domain size";
    for (int p : a)
      if (p < 0 || p >= fiber[static_cast<std::size_t>(g.cod(m))])
        return "action of " + g.morphism_name(m) + " leaves the codomain fiber";
  }
  for (int x = 0; x < g.num_objects(); ++x) {
    const auto& e = act[static_cast<std::size_t>(g.identity(x))];
    for (int p = 0; p < static_cast<int>(e.size()); ++p)
      if (e[static_cast<std::size_t>(p)] != p)
        return "identity of object " + std::to_string(g.object_label(x)) +
               " does not act as the identity";
  }
  for (int gm = 0; gm < g.num_morphisms(); ++gm)
    for (int fm = 0; fm < g.num_morphisms(); ++fm) {
      if (!g.composable(gm, fm)) continue;
      const auto& ag = act[static_cast<std::size_t>(gm)];
      const auto& af = act[static_cast<std::size_t>(fm)];
      const auto& agf = act[static_cast<std::size_t>(g.compose(gm, fm))];
      for (int p = 0; p < static_cast<int>(af.size()); ++p)
        if (agf[static_cast<std::size_t>(p)] != ag[static_cast<std::size_t>(af[static_cast<std::size_t>(p)])])
          return "act(" + g.morphism_name(gm) + "∘" + g.morphism_name(fm) +
                 ") disagrees with the composite action at point " + std::to_string(p);
    }
  return {};
}

void GSet::check_functorial() const {
  std::string v = functorial_violation();
  if (!v.empty()) throw InvariantViolationError("G-set is not functorial: " + v);
}

std::vector<std::vector<PointRef>> orbits(const GSet& x) {
  const FiniteGroupoid& g = *x.base;
  std::vector<int> offset(x.fiber.size() + 1, 0);
  for (std::size_t i = 0; i < x.fiber.size(); ++i) offset[i + 1] = offset[i] + x.fiber[i];
  const int total = offset.back();

  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };

  for (int m = 0; m < g.num_morphisms(); ++m) {
    int ox = offset[static_cast<std::size_t>(g.dom(m))];
    int oy = offset[static_cast<std::size_t>(g.cod(m))];
    const auto& a = x.act[static_cast<std::size_t>(m)];
    for (int p = 0; p < static_cast<int>(a.size()); ++p)
      unite(ox + p, oy + a[static_cast<std::size_t>(p)]);
  }

  std::map<int, std::vector<PointRef>> buckets;
  for (int obj = 0; obj < static_cast<int>(x.fiber.size()); ++obj)
    for (int p = 0; p < x.fiber[static_cast<std::size_t>(obj)]; ++p)
      buckets[find(offset[static_cast<std::size_t>(obj)] + p)].push_back({obj, p});

  std::vector<std::vector<PointRef>> out;
  out.reserve(buckets.size());
  for (auto& [root, members] : buckets) out.push_back(std::move(members));
  // Buckets keyed by root = smallest flat index, so map order is already the
  // smallest-member order; members were appended in flat order, hence sorted.
  return out;
}

void GMonoid::check_monoid() const {
  set.check_functorial();
  const FiniteGroupoid& g = *set.base;
  for (int x = 0; x < g.num_objects(); ++x) {
    int n = set.fiber[static_cast<std::size_t>(x)];
    const auto& table = mul[static_cast<std::size_t>(x)];
    int e = unit[static_cast<std::size_t>(x)];
    for (int i = 0; i < n; ++i)
      if (table[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] != i ||
          table[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] != i)
        throw InvariantViolationError("monoid unit law fails at object " +
                                      std::to_string(g.object_label(x)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          int ij = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          int jk = table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (table[static_cast<std::size_t>(ij)][static_cast<std::size_t>(k)] !=
              table[static_cast<std::size_t>(i)][static_cast<std::size_t>(jk)])
            throw InvariantViolationError("monoid associativity fails at object " +
                                          std::to_string(g.object_label(x)));
        }
  }
  // Action maps must be monoid homomorphisms on fibers.
  for (int m = 0; m < g.num_morphisms(); ++m) {
    int x = g.dom(m), y = g.cod(m);
    const auto& a = set.act[static_cast<std::size_t>(m)];
    const auto& tx = mul[static_cast<std::size_t>(x)];
    const auto& ty = mul[static_cast<std::size_t>(y)];
    if (a[static_cast<std::size_t>(unit[static_cast<std::size_t>(x)])] !=
        unit[static_cast<std::size_t>(y)])
      throw InvariantViolationError("action of " + g.morphism_name(m) +
                                    " does not preserve the monoid unit");
    int n = set.fiber[static_cast<std::size_t>(x)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a[static_cast<std::size_t>(tx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] !=
            ty[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])][static_cast<std::size_t>(a[static_cast<std::size_t>(j)])])
          throw InvariantViolationError("action of " + g.morphism_name(m) +
                                        " is not multiplicative on fibers");
  }
}

GMonoid conjugation_monoid(const Groupoid& g) {
  GMonoid cm;
  cm.set.base = g;
  const int n = g->num_objects();
  cm.set.fiber.resize(n);
  cm.set.labels.resize(n);
  cm.unit.resize(n);
  cm.mul.resize(n);
  std::vector<LocalGroup> iso;
  iso.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    iso.push_back(isotropy_group(*g, x));
    const LocalGroup& lg = iso.back();
    cm.set.fiber[static_cast<std::size_t>(x)] = lg.order();
    cm.unit[static_cast<std::size_t>(x)] = lg.identity;
    cm.mul[static_cast<std::size_t>(x)] = lg.mul;
    for (int e : lg.elems)
      cm.set.labels[static_cast<std::size_t>(x)].push_back(g->morphism_name(e));
  }
  cm.set.act.resize(static_cast<std::size_t>(g->num_morphisms()));
  for (int m = 0; m < g->num_morphisms(); ++m) {
    const LocalGroup& lx = iso[static_cast<std::size_t>(g->dom(m))];
    const LocalGroup& ly = iso[static_cast<std::size_t>(g->cod(m))];
    auto& a = cm.set.act[static_cast<std::size_t>(m)];
    a.resize(static_cast<std::size_t>(lx.order()));
    for (int i = 0; i < lx.order(); ++i)
      a[static_cast<std::size_t>(i)] =
          ly.index_of(g->compose(g->compose(m, lx.elems[static_cast<std::size_t>(i)]), g->inverse(m)));
  }
  cm.check_monoid();
  return cm;
}

bool Subgroup::contains(int local) const {
  return std::binary_search(elems.begin(), elems.end(), local);
}

Subgroup closure(const LocalGroup& lg, std::vector<int> generators) {
  std::set<int> members = {lg.identity};
  std::queue<int> frontier;
  frontier.push(lg.identity);
  for (int g : generators)
    if (members.insert(g).second) frontier.push(g);
  while (!frontier.empty()) {
    int a = frontier.front();
    frontier.pop();
    for (int b : members) {
      for (int c : {lg.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                    lg.mul[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]}) {
        if (members.insert(c).second) frontier.push(c);
      }
    }
    int ia = lg.inv[static_cast<std::size_t>(a)];
    if (members.insert(ia).second) frontier.push(ia);
  }
  Subgroup h;
  h.elems.assign(members.begin(), members.end());
  return h;
}

bool is_subgroup(const LocalGroup& lg, const Subgroup& h) {
  if (!h.contains(lg.identity)) return false;
  for (int a : h.elems) {
    if (!h.contains(lg.inv[static_cast<std::size_t>(a)])) return false;
    for (int b : h.elems)
      if (!h.contains(lg.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])) return false;
  }
  return true;
}

std::vector<Subgroup> enumerate_subgroups(const LocalGroup& lg, int max_order) {
  if (lg.order() > max_order)
    throw BoundExceededError("subgroup enumeration bound: group order " +
                             std::to_string(lg.order()) + " exceeds " + std::to_string(max_order));
  std::set<std::vector<int>> seen;
  std::queue<Subgroup> work;
  Subgroup triv;
  triv.elems = {lg.identity};
  seen.insert(triv.elems);
  work.push(triv);
  while (!work.empty()) {
    Subgroup s = work.front();
    work.pop();
    for (int g = 0; g < lg.order(); ++g) {
      if (s.contains(g)) continue;
      std::vector<int> gens = s.elems;
      gens.push_back(g);
      Subgroup bigger = closure(lg, gens);
      if (seen.insert(bigger.elems).second) work.push(bigger);
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& elems : seen) {
    Subgroup h;
    h.elems = elems;
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> left_cosets(const LocalGroup& lg, const Subgroup& h) {
  if (!is_subgroup(lg, h))
    throw NotSubgroupError("coset enumeration: the given subset of the isotropy group at object " +
                           std::to_string(lg.object) + " is not a subgroup");
  std::vector<char> covered(static_cast<std::size_t>(lg.order()), 0);
  std::vector<std::vector<int>> cosets;
  for (int u = 0; u < lg.order(); ++u) {
    if (covered[static_cast<std::size_t>(u)]) continue;
    std::vector<int> coset;
    for (int e : h.elems) {
      int v = lg.mul[static_cast<std::size_t>(u)][static_cast<std::size_t>(e)];
      covered[static_cast<std::size_t>(v)] = 1;
      coset.push_back(v);
    }
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

std::vector<int> centralizer(const LocalGroup& lg, const Subgroup& h) {
  std::vector<int> out;
  for (int u = 0; u < lg.order(); ++u) {
    bool commutes = true;
    for (int e : h.elems)
      if (lg.mul[static_cast<std::size_t>(u)][static_cast<std::size_t>(e)] !=
          lg.mul[static_cast<std::size_t>(e)][static_cast<std::size_t>(u)]) {
        commutes = false;
        break;
      }
    if (commutes) out.push_back(u);
  }
  return out;
}

Subgroup conjugate_subgroup(const LocalGroup& lg, const Subgroup& h, int g_local) {
  Subgroup out;
  int gi = lg.inv[static_cast<std::size_t>(g_local)];
  for (int e : h.elems)
    out.elems.push_back(
        lg.mul[static_cast<std::size_t>(lg.mul[static_cast<std::size_t>(g_local)][static_cast<std::size_t>(e)])]
              [static_cast<std::size_t>(gi)]);
  std::sort(out.elems.begin(), out.elems.end());
  return out;
}

Subgroup stabilizer(const GSet& x, const LocalGroup& iso, int point) {
  Subgroup s;
  for (int i = 0; i < iso.order(); ++i)
    if (x.act[static_cast<std::size_t>(iso.elems[static_cast<std::size_t>(i)])][static_cast<std::size_t>(point)] == point)
      s.elems.push_back(i);
  return s;
}

OmegaSet omega(const Groupoid& g, const Transversal& t, int subgroup_bound) {
  check_transversal(*g, t);
  const int n = g->num_objects();

  OmegaSet om;
  om.transversal = t;
  om.set.base = g;
  om.set.fiber.assign(static_cast<std::size_t>(n), 0);
  om.set.labels.resize(static_cast<std::size_t>(n));
  om.decomp.resize(static_cast<std::size_t>(n));
  om.coset_rep.resize(static_cast<std::size_t>(n));
  om.subgroup_count.assign(t.base.size(), 0);

  std::vector<LocalGroup> iso;
  iso.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) iso.push_back(isotropy_group(*g, x));

  // Per object, per subgroup index: local-element -> coset index, and the
  // flat offset of that subgroup's block in the fiber.
  std::vector<std::vector<std::vector<int>>> elem_coset(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> block_offset(static_cast<std::size_t>(n));

  for (std::size_t c = 0; c < t.base.size(); ++c) {
    int b = t.base[c];
    std::vector<Subgroup> base_subs = enumerate_subgroups(iso[static_cast<std::size_t>(b)], subgroup_bound);
    om.subgroup_count[c] = static_cast<int>(base_subs.size());

    for (int y = 0; y < n; ++y) {
      if (t.component_of[static_cast<std::size_t>(y)] != static_cast<int>(c)) continue;
      const LocalGroup& ly = iso[static_cast<std::size_t>(y)];
      int lam = t.lambda(*g, b, y);
      int lam_inv = g->inverse(lam);

      elem_coset[static_cast<std::size_t>(y)].resize(base_subs.size());
      block_offset[static_cast<std::size_t>(y)].resize(base_subs.size());
      om.coset_rep[static_cast<std::size_t>(y)].resize(base_subs.size());

      for (std::size_t hi = 0; hi < base_subs.size(); ++hi) {
        // Transport H along λ_{b,y}: elements λ e λ⁻¹ as loops at y.
        Subgroup hy;
        for (int e_local : base_subs[hi].elems) {
          int e = iso[static_cast<std::size_t>(b)].elems[static_cast<std::size_t>(e_local)];
          hy.elems.push_back(ly.index_of(g->compose(g->compose(lam, e), lam_inv)));
        }
        std::sort(hy.elems.begin(), hy.elems.end());

        auto cosets = left_cosets(ly, hy);
        block_offset[static_cast<std::size_t>(y)][hi] = om.set.fiber[static_cast<std::size_t>(y)];
        elem_coset[static_cast<std::size_t>(y)][hi].assign(static_cast<std::size_t>(ly.order()), -1);
        for (std::size_t k = 0; k < cosets.size(); ++k) {
          for (int member : cosets[k])
            elem_coset[static_cast<std::size_t>(y)][hi][static_cast<std::size_t>(member)] =
                static_cast<int>(k);
          om.coset_rep[static_cast<std::size_t>(y)][hi].push_back(
              ly.elems[static_cast<std::size_t>(cosets[k][0])]);
          om.decomp[static_cast<std::size_t>(y)].push_back({static_cast<int>(hi), static_cast<int>(k)});
          om.set.labels[static_cast<std::size_t>(y)].push_back(
              "x" + std::to_string(g->object_label(y)) + ":H" + std::to_string(hi) + ":k" +
              std::to_string(k));
        }
        om.set.fiber[static_cast<std::size_t>(y)] += static_cast<int>(cosets.size());
      }
    }
  }

  // Action: m: x -> y sends ⟨H, kH⟩ to ⟨H, (m ∘ k ∘ λ_{x,y}⁻¹) H⟩.
  om.set.act.resize(static_cast<std::size_t>(g->num_morphisms()));
  for (int m = 0; m < g->num_morphisms(); ++m) {
    int x = g->dom(m), y = g->cod(m);
    int lam_inv = g->inverse(t.lambda(*g, x, y));
    const LocalGroup& ly = iso[static_cast<std::size_t>(y)];
    auto& a = om.set.act[static_cast<std::size_t>(m)];
    a.reserve(static_cast<std::size_t>(om.set.fiber[static_cast<std::size_t>(x)]));
    for (const auto& [hi, k] : om.decomp[static_cast<std::size_t>(x)]) {
      int rep = om.coset_rep[static_cast<std::size_t>(x)][static_cast<std::size_t>(hi)]
                            [static_cast<std::size_t>(k)];
      int target = g->compose(g->compose(m, rep), lam_inv);
      int coset = elem_coset[static_cast<std::size_t>(y)][static_cast<std::size_t>(hi)]
                            [static_cast<std::size_t>(ly.index_of(target))];
      a.push_back(block_offset[static_cast<std::size_t>(y)][static_cast<std::size_t>(hi)] + coset);
    }
  }

  om.set.check_functorial();
  return om;
}

GSet gset_product(const GSet& a, const GSet& b) {
  if (a.base != b.base)
    throw InvariantViolationError("gset_product requires actions of the same groupoid instance");
  const FiniteGroupoid& g = *a.base;
  GSet p;
  p.base = a.base;
  const int n = g.num_objects();
  p.fiber.resize(static_cast<std::size_t>(n));
  p.labels.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    int fa = a.fiber[static_cast<std::size_t>(x)], fb = b.fiber[static_cast<std::size_t>(x)];
    p.fiber[static_cast<std::size_t>(x)] = fa * fb;
    auto& lx = p.labels[static_cast<std::size_t>(x)];
    lx.reserve(static_cast<std::size_t>(fa * fb));
    for (int i = 0; i < fa; ++i)
      for (int j = 0; j < fb; ++j)
        lx.push_back("(" + a.label(x, i) + "," + b.label(x, j) + ")");
  }
  p.act.resize(static_cast<std::size_t>(g.num_morphisms()));
  for (int m = 0; m < g.num_morphisms(); ++m) {
    int x = g.dom(m), y = g.cod(m);
    int fbx = b.fiber[static_cast<std::size_t>(x)];
    int fby = b.fiber[static_cast<std::size_t>(y)];
    const auto& am = a.act[static_cast<std::size_t>(m)];
    const auto& bm = b.act[static_cast<std::size_t>(m)];
    auto& pm = p.act[static_cast<std::size_t>(m)];
    pm.reserve(static_cast<std::size_t>(p.fiber[static_cast<std::size_t>(x)]));
    for (int i = 0; i < a.fiber[static_cast<std::size_t>(x)]; ++i)
      for (int j = 0; j < fbx; ++j)
        pm.push_back(am[static_cast<std::size_t>(i)] * fby + bm[static_cast<std::size_t>(j)]);
  }
  p.check_functorial();
  return p;
}

GSet restrict(const GSet& x, const SubgroupoidView& view) {
  GSet r;
  r.base = view.sub;
  for (int obj : view.object_in_parent) {
    r.fiber.push_back(x.fiber[static_cast<std::size_t>(obj)]);
    if (!x.labels.empty())
      r.labels.push_back(x.labels[static_cast<std::size_t>(obj)]);
  }
  for (int m : view.morphism_in_parent) r.act.push_back(x.act[static_cast<std::size_t>(m)]);
  r.check_functorial();
  return r;
}

}  // namespace grpd
