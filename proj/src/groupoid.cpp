#include "grpd/groupoid.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace grpd {

namespace {

// splitmix64; used for seed-dependent but fully deterministic shuffles.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void seeded_shuffle(std::vector<int>& v, std::uint64_t seed) {
  std::uint64_t state = seed;
  for (std::size_t i = v.size(); i > 1; --i) {
    state = mix64(state);
    std::swap(v[i - 1], v[state % i]);
  }
}

std::string pair_name(const FiniteGroupoid& g, int a, int b) {
  return "(" + g.morphism_name(a) + ", " + g.morphism_name(b) + ")";
}

}  // namespace

int LocalGroup::index_of(int global_morphism) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), global_morphism);
  if (it == elems.end() || *it != global_morphism)
    throw InvariantViolationError("morphism m" + std::to_string(global_morphism) +
                                  " is not a loop of this isotropy group");
  return static_cast<int>(it - elems.begin());
}

CayleyTable cyclic_table(int n) {
  if (n < 1) throw FormatError("cyclic group order must be positive");
  CayleyTable t;
  t.mul.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.mul[i][j] = (i + j) % n;
  return t;
}

CayleyTable symmetric_table(int n) {
  if (n < 1) throw FormatError("symmetric group degree must be positive");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // Lexicographic order puts the identity permutation first.
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

  int order = static_cast<int>(perms.size());
  CayleyTable t;
  t.mul.assign(order, std::vector<int>(order));
  std::vector<int> prod(n);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      for (int k = 0; k < n; ++k) prod[k] = perms[i][perms[j][k]];  // i after j
      t.mul[i][j] = index.at(prod);
    }
  return t;
}

CayleyTable klein4_table() {
  CayleyTable t;
  t.mul = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return t;
}

CayleyTable parse_cayley_table(const std::string& text) {
  std::vector<long long> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        tokens.push_back(v);
      } catch (const std::exception&) {
        throw FormatError("table token '" + tok + "' is not an integer");
      }
    }
  }
  if (tokens.empty()) throw FormatError("table file contains no data");
  long long n = tokens[0];
  if (n < 1) throw FormatError("table order must be positive, got " + std::to_string(n));
  if (static_cast<long long>(tokens.size()) != 1 + n * n)
    throw FormatError("expected " + std::to_string(n * n) + " table entries, found " +
                      std::to_string(tokens.size() - 1));
  CayleyTable t;
  t.mul.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  std::size_t k = 1;
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j, ++k) {
      long long v = tokens[k];
      if (v < 0 || v >= n)
        throw FormatError("table entry " + std::to_string(v) + " at row " + std::to_string(i) +
                          ", column " + std::to_string(j) + " is out of range");
      t.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>(v);
    }
  for (long long j = 0; j < n; ++j)
    if (t.mul[0][static_cast<std::size_t>(j)] != j || t.mul[static_cast<std::size_t>(j)][0] != j)
      throw BadIdentityError("table index 0 is not a two-sided identity (fails at element " +
                             std::to_string(j) + ")");
  return t;
}

CayleyTable load_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open table file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cayley_table(buf.str());
}

Groupoid validate_groupoid(const RawGroupoid& raw) {
  if (raw.objects.empty()) throw FormatError("groupoid has no objects");

  std::map<int, int> obj_index;
  std::vector<int> objects = raw.objects;
  std::sort(objects.begin(), objects.end());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (i > 0 && objects[i] == objects[i - 1])
      throw FormatError("duplicate object id " + std::to_string(objects[i]));
    obj_index[objects[i]] = static_cast<int>(i);
  }

  std::vector<RawGroupoid::Morphism> morphs = raw.morphisms;
  std::sort(morphs.begin(), morphs.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::map<int, int> mor_index;
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    if (i > 0 && morphs[i].id == morphs[i - 1].id)
      throw FormatError("duplicate morphism id " + std::to_string(morphs[i].id));
    mor_index[morphs[i].id] = static_cast<int>(i);
  }
  if (morphs.empty()) throw FormatError("groupoid has no morphisms");

  const int n = static_cast<int>(objects.size());
  const int m = static_cast<int>(morphs.size());

  auto g = std::make_shared<FiniteGroupoid>();
  g->object_labels_ = objects;
  g->dom_.resize(m);
  g->cod_.resize(m);
  g->morphism_labels_.resize(m);
  for (int i = 0; i < m; ++i) {
    auto dit = obj_index.find(morphs[i].dom);
    if (dit == obj_index.end())
      throw FormatError("morphism " + std::to_string(morphs[i].id) + " has unknown dom " +
                        std::to_string(morphs[i].dom));
    auto cit = obj_index.find(morphs[i].cod);
    if (cit == obj_index.end())
      throw FormatError("morphism " + std::to_string(morphs[i].id) + " has unknown cod " +
                        std::to_string(morphs[i].cod));
    g->dom_[i] = dit->second;
    g->cod_[i] = cit->second;
    g->morphism_labels_[i] = morphs[i].id;
  }

  // Identities: one per object, a loop at that object.
  g->identity_.assign(n, -1);
  for (const auto& [obj, idm] : raw.identities) {
    auto oit = obj_index.find(obj);
    if (oit == obj_index.end())
      throw FormatError("identity declared for unknown object " + std::to_string(obj));
    auto mit = mor_index.find(idm);
    if (mit == mor_index.end())
      throw FormatError("identity of object " + std::to_string(obj) + " names unknown morphism " +
                        std::to_string(idm));
    g->identity_[oit->second] = mit->second;
  }
  for (int x = 0; x < n; ++x) {
    if (g->identity_[x] < 0)
      throw BadIdentityError("object " + std::to_string(objects[x]) + " has no identity");
    int e = g->identity_[x];
    if (g->dom_[e] != x || g->cod_[e] != x)
      throw BadIdentityError("identity m" + std::to_string(g->morphism_labels_[e]) +
                             " of object " + std::to_string(objects[x]) +
                             " is not a loop at that object");
  }

  // Composition table: must cover exactly the composable pairs.
  g->compose_.assign(static_cast<std::size_t>(m) * m, -1);
  for (const auto& entry : raw.compose) {
    auto git = mor_index.find(entry[0]);
    auto fit = mor_index.find(entry[1]);
    auto rit = mor_index.find(entry[2]);
    if (git == mor_index.end() || fit == mor_index.end() || rit == mor_index.end())
      throw FormatError("compose entry (" + std::to_string(entry[0]) + ", " +
                        std::to_string(entry[1]) + ", " + std::to_string(entry[2]) +
                        ") names an unknown morphism");
    int gi = git->second, fi = fit->second, ri = rit->second;
    if (g->dom_[gi] != g->cod_[fi])
      throw FormatError("compose entry " + pair_name(*g, gi, fi) +
                        " declared for a non-composable pair");
    auto& slot = g->compose_[static_cast<std::size_t>(gi) * m + fi];
    if (slot >= 0)
      throw FormatError("duplicate compose entry for " + pair_name(*g, gi, fi));
    if (g->dom_[ri] != g->dom_[fi] || g->cod_[ri] != g->cod_[gi])
      throw FormatError("composite of " + pair_name(*g, gi, fi) + " has wrong endpoints");
    slot = ri;
  }
  for (int gi = 0; gi < m; ++gi)
    for (int fi = 0; fi < m; ++fi) {
      if (g->dom_[gi] != g->cod_[fi]) continue;
      if (g->compose_[static_cast<std::size_t>(gi) * m + fi] < 0)
        throw MissingCompositeError("no composite for composable pair " + pair_name(*g, gi, fi));
    }

  // Hom sets (needed for the remaining checks and by every consumer).
  g->hom_.assign(static_cast<std::size_t>(n) * n, {});
  for (int i = 0; i < m; ++i)
    g->hom_[static_cast<std::size_t>(g->dom_[i]) * n + g->cod_[i]].push_back(i);

  // Unit laws.
  for (int f = 0; f < m; ++f) {
    int le = g->identity_[g->cod_[f]];
    int re = g->identity_[g->dom_[f]];
    if (g->compose_[static_cast<std::size_t>(le) * m + f] != f ||
        g->compose_[static_cast<std::size_t>(f) * m + re] != f)
      throw BadIdentityError("identity law fails at morphism " + g->morphism_name(f));
  }

  // Associativity over every composable triple.
  for (int f = 0; f < m; ++f) {
    int x = g->dom_[f], y = g->cod_[f];
    for (int z = 0; z < n; ++z) {
      const auto& gs = g->hom_[static_cast<std::size_t>(y) * n + z];
      if (gs.empty()) continue;
      for (int w = 0; w < n; ++w) {
        const auto& hs = g->hom_[static_cast<std::size_t>(w) * n + x];
        for (int gi : gs) {
          int gf = g->compose_[static_cast<std::size_t>(gi) * m + f];
          for (int hi : hs) {
            int fh = g->compose_[static_cast<std::size_t>(f) * m + hi];
            if (g->compose_[static_cast<std::size_t>(gf) * m + hi] !=
                g->compose_[static_cast<std::size_t>(gi) * m + fh])
              throw AssociativityViolationError(
                  "associativity fails on (" + g->morphism_name(gi) + ", " + g->morphism_name(f) +
                  ", " + g->morphism_name(hi) + ")");
          }
        }
      }
    }
  }

  // Two-sided inverses.
  g->inverse_.assign(m, -1);
  for (int f = 0; f < m; ++f) {
    int x = g->dom_[f], y = g->cod_[f];
    for (int u : g->hom_[static_cast<std::size_t>(y) * n + x]) {
      if (g->compose_[static_cast<std::size_t>(f) * m + u] == g->identity_[y] &&
          g->compose_[static_cast<std::size_t>(u) * m + f] == g->identity_[x]) {
        g->inverse_[f] = u;
        break;
      }
    }
    if (g->inverse_[f] < 0)
      throw NoInverseError("morphism " + g->morphism_name(f) + " has no two-sided inverse");
  }

  return g;
}

Groupoid group_groupoid(const CayleyTable& table) {
  const int n = table.order();
  if (n < 1) throw FormatError("group table is empty");
  for (const auto& row : table.mul)
    if (static_cast<int>(row.size()) != n) throw FormatError("group table is not square");
  for (int j = 0; j < n; ++j)
    if (table.mul[0][static_cast<std::size_t>(j)] != j ||
        table.mul[static_cast<std::size_t>(j)][0] != j)
      throw BadIdentityError("table index 0 is not a two-sided identity (fails at element " +
                             std::to_string(j) + ")");
  RawGroupoid raw;
  raw.objects = {0};
  raw.identities[0] = 0;
  for (int i = 0; i < n; ++i) raw.morphisms.push_back({i, 0, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw.compose.push_back({i, j, table.mul[i][j]});
  return validate_groupoid(raw);
}

Groupoid pair_groupoid(int n) {
  if (n < 1) throw FormatError("pair groupoid needs at least one object");
  RawGroupoid raw;
  for (int x = 0; x < n; ++x) raw.objects.push_back(x);
  // Morphism (x, y) gets id x*n + y; dom x, cod y.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) raw.morphisms.push_back({x * n + y, x, y});
  for (int x = 0; x < n; ++x) raw.identities[x] = x * n + x;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        raw.compose.push_back({y * n + z, x * n + y, x * n + z});
  return validate_groupoid(raw);
}

Groupoid product_groupoid(const Groupoid& a, const Groupoid& b) {
  const int nb = b->num_objects();
  const int mb = b->num_morphisms();
  RawGroupoid raw;
  for (int x = 0; x < a->num_objects(); ++x)
    for (int y = 0; y < nb; ++y) raw.objects.push_back(x * nb + y);
  auto mid = [mb](int i, int j) { return i * mb + j; };
  for (int i = 0; i < a->num_morphisms(); ++i)
    for (int j = 0; j < mb; ++j)
      raw.morphisms.push_back({mid(i, j), a->dom(i) * nb + b->dom(j), a->cod(i) * nb + b->cod(j)});
  for (int x = 0; x < a->num_objects(); ++x)
    for (int y = 0; y < nb; ++y)
      raw.identities[x * nb + y] = mid(a->identity(x), b->identity(y));
  for (int i = 0; i < a->num_morphisms(); ++i)
    for (int j = 0; j < mb; ++j)
      for (int k = 0; k < a->num_morphisms(); ++k)
        for (int l = 0; l < mb; ++l) {
          if (!a->composable(i, k) || !b->composable(j, l)) continue;
          raw.compose.push_back({mid(i, j), mid(k, l), mid(a->compose(i, k), b->compose(j, l))});
        }
  return validate_groupoid(raw);
}

Groupoid disjoint_union(const std::vector<Groupoid>& parts) {
  if (parts.empty()) throw FormatError("disjoint union of zero groupoids is empty");
  RawGroupoid raw;
  int obj_off = 0, mor_off = 0;
  for (const auto& part : parts) {
    for (int x = 0; x < part->num_objects(); ++x) raw.objects.push_back(obj_off + x);
    for (int i = 0; i < part->num_morphisms(); ++i)
      raw.morphisms.push_back({mor_off + i, obj_off + part->dom(i), obj_off + part->cod(i)});
    for (int x = 0; x < part->num_objects(); ++x)
      raw.identities[obj_off + x] = mor_off + part->identity(x);
    for (int i = 0; i < part->num_morphisms(); ++i)
      for (int j = 0; j < part->num_morphisms(); ++j)
        if (part->composable(i, j))
          raw.compose.push_back({mor_off + i, mor_off + j, mor_off + part->compose(i, j)});
    obj_off += part->num_objects();
    mor_off += part->num_morphisms();
  }
  return validate_groupoid(raw);
}

ConnectedComponents connected_components(const FiniteGroupoid& g) {
  const int n = g.num_objects();
  std::vector<int> comp(n, -1);
  int count = 0;
  std::vector<int> reps;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = count;
    reps.push_back(start);
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y = 0; y < n; ++y) {
        if (comp[y] >= 0) continue;
        if (!g.hom(x, y).empty() || !g.hom(y, x).empty()) {
          comp[y] = count;
          q.push(y);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), std::move(reps), count};
}

namespace {

SubgroupoidView subgroupoid_from(const Groupoid& g, const std::vector<int>& objs) {
  RawGroupoid raw;
  std::set<int> in_set(objs.begin(), objs.end());
  raw.objects = objs;
  std::vector<int> mors;
  for (int i = 0; i < g->num_morphisms(); ++i)
    if (in_set.count(g->dom(i)) && in_set.count(g->cod(i))) mors.push_back(i);
  for (int i : mors) raw.morphisms.push_back({i, g->dom(i), g->cod(i)});
  for (int x : objs) raw.identities[x] = g->identity(x);
  for (int i : mors)
    for (int j : mors)
      if (g->composable(i, j)) raw.compose.push_back({i, j, g->compose(i, j)});
  SubgroupoidView view;
  view.sub = validate_groupoid(raw);
  view.object_in_parent = objs;       // sorted ascending == validate order
  view.morphism_in_parent = mors;
  return view;
}

}  // namespace

SubgroupoidView component_subgroupoid(const Groupoid& g, int component) {
  ConnectedComponents cc = connected_components(*g);
  if (component < 0 || component >= cc.count)
    throw InvariantViolationError("component index " + std::to_string(component) +
                                  " out of range");
  std::vector<int> objs;
  for (int x = 0; x < g->num_objects(); ++x)
    if (cc.component_of[x] == component) objs.push_back(x);
  return subgroupoid_from(g, objs);
}

SubgroupoidView isotropy_subgroupoid(const Groupoid& g, int x) {
  if (x < 0 || x >= g->num_objects())
    throw InvariantViolationError("object index " + std::to_string(x) + " out of range");
  return subgroupoid_from(g, {x});
}

LocalGroup isotropy_group(const FiniteGroupoid& g, int x) {
  LocalGroup lg;
  lg.object = x;
  lg.elems = g.loops_at(x);  // sorted by construction
  const int k = static_cast<int>(lg.elems.size());
  lg.mul.assign(k, std::vector<int>(k));
  lg.inv.resize(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) lg.mul[i][j] = lg.index_of(g.compose(lg.elems[i], lg.elems[j]));
    lg.inv[i] = lg.index_of(g.inverse(lg.elems[i]));
    if (lg.elems[i] == g.identity(x)) lg.identity = i;
  }
  return lg;
}

int Transversal::lambda(const FiniteGroupoid& g, int x, int y) const {
  if (component_of[static_cast<std::size_t>(x)] != component_of[static_cast<std::size_t>(y)])
    throw InvariantViolationError("lambda requested across components");
  return g.compose(connector[static_cast<std::size_t>(y)],
                   g.inverse(connector[static_cast<std::size_t>(x)]));
}

Transversal make_transversal(const FiniteGroupoid& g, std::uint64_t seed) {
  ConnectedComponents cc = connected_components(g);
  Transversal t;
  t.seed = seed;
  t.component_of = cc.component_of;
  t.base = cc.representative;
  t.connector.assign(g.num_objects(), -1);

  std::vector<int> order(g.num_morphisms());
  std::iota(order.begin(), order.end(), 0);
  if (seed != 0) seeded_shuffle(order, seed);

  // Morphisms grouped by dom, respecting the (possibly shuffled) scan order.
  std::vector<std::vector<int>> out_of(g.num_objects());
  for (int m : order) out_of[static_cast<std::size_t>(g.dom(m))].push_back(m);

  for (int c = 0; c < cc.count; ++c) {
    int b = cc.representative[static_cast<std::size_t>(c)];
    t.connector[static_cast<std::size_t>(b)] = g.identity(b);
    std::queue<int> q;
    q.push(b);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int m : out_of[static_cast<std::size_t>(x)]) {
        int y = g.cod(m);
        if (t.connector[static_cast<std::size_t>(y)] >= 0) continue;
        t.connector[static_cast<std::size_t>(y)] =
            g.compose(m, t.connector[static_cast<std::size_t>(x)]);
        q.push(y);
      }
    }
  }
  for (int x = 0; x < g.num_objects(); ++x)
    if (t.connector[static_cast<std::size_t>(x)] < 0)
      throw InvariantViolationError("transversal failed to reach object " +
                                    std::to_string(g.object_label(x)));
  return t;
}

void check_transversal(const FiniteGroupoid& g, const Transversal& t) {
  ConnectedComponents cc = connected_components(g);
  if (static_cast<int>(t.component_of.size()) != g.num_objects() ||
      static_cast<int>(t.connector.size()) != g.num_objects() ||
      static_cast<int>(t.base.size()) != cc.count || t.component_of != cc.component_of ||
      t.base != cc.representative)
    throw TransversalMismatchError("transversal was built for a different groupoid");
  for (int x = 0; x < g.num_objects(); ++x) {
    int m = t.connector[static_cast<std::size_t>(x)];
    if (m < 0 || m >= g.num_morphisms())
      throw TransversalMismatchError("connector of object " + std::to_string(g.object_label(x)) +
                                     " is out of range");
    int b = t.base[static_cast<std::size_t>(t.component_of[static_cast<std::size_t>(x)])];
    if (g.dom(m) != b || g.cod(m) != x)
      throw TransversalMismatchError("connector " + g.morphism_name(m) + " of object " +
                                     std::to_string(g.object_label(x)) +
                                     " has wrong endpoints");
    if (x == b && m != g.identity(b))
      throw TransversalMismatchError("connector at base object " +
                                     std::to_string(g.object_label(b)) +
                                     " must be the identity");
  }
}

StructureIsoWitness structure_iso_check(const FiniteGroupoid& g, const Transversal& t) {
  ConnectedComponents cc = connected_components(g);
  if (cc.count != 1)
    throw NotConnectedError("structure check requires a connected groupoid, found " +
                            std::to_string(cc.count) + " components");
  check_transversal(g, t);

  StructureIsoWitness w;
  w.base = t.base[0];
  w.objects = g.num_objects();
  const LocalGroup iso = isotropy_group(g, w.base);
  w.isotropy_order = iso.order();

  const int m = g.num_morphisms();
  std::vector<int> loop_part(m);
  std::set<std::array<int, 3>> images;
  for (int u = 0; u < m; ++u) {
    int lp = g.compose(g.inverse(t.connector[static_cast<std::size_t>(g.cod(u))]),
                       g.compose(u, t.connector[static_cast<std::size_t>(g.dom(u))]));
    loop_part[u] = lp;
    images.insert({lp, g.dom(u), g.cod(u)});
  }
  w.bijective = static_cast<int>(images.size()) == m &&
                m == w.isotropy_order * w.objects * w.objects;

  w.functorial = true;
  for (int gm = 0; gm < m && w.functorial; ++gm)
    for (int fm = 0; fm < m; ++fm) {
      if (!g.composable(gm, fm)) continue;
      int lhs = loop_part[static_cast<std::size_t>(g.compose(gm, fm))];
      int rhs = g.compose(loop_part[static_cast<std::size_t>(gm)],
                          loop_part[static_cast<std::size_t>(fm)]);
      if (lhs != rhs) {
        w.functorial = false;
        break;
      }
    }
  return w;
}

long long expected_morphism_count(const FiniteGroupoid& g) {
  ConnectedComponents cc = connected_components(g);
  long long total = 0;
  for (int c = 0; c < cc.count; ++c) {
    long long objs = std::count(cc.component_of.begin(), cc.component_of.end(), c);
    long long iso = static_cast<long long>(g.loops_at(cc.representative[c]).size());
    total += iso * objs * objs;
  }
  return total;
}

}  // namespace grpd
