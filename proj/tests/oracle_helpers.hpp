#pragma once

// Shared fixtures and independent oracles for the test suite. Everything in
// here is deliberately naive: oracles recompute results by a different route
// than the library (brute force, counting formulas), so agreement is evidence
// rather than tautology.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/gset.hpp"

namespace grpd::testing {

// --- fixture fleet ---------------------------------------------------------

inline Groupoid make_c(int n) { return group_groupoid(cyclic_table(n)); }
inline Groupoid make_s3() { return group_groupoid(symmetric_table(3)); }
inline Groupoid make_k4() { return group_groupoid(klein4_table()); }

/// C2 spread over two objects.
inline Groupoid make_c2p2() { return product_groupoid(make_c(2), pair_groupoid(2)); }

/// C3 spread over three objects.
inline Groupoid make_c3p3() { return product_groupoid(make_c(3), pair_groupoid(3)); }

/// The three-component workhorse: (C2 x Pair(2)) + C3 + Pair(3).
inline Groupoid make_union3() {
  return disjoint_union({make_c2p2(), make_c(3), pair_groupoid(3)});
}

/// Every valid groupoid the suite exercises, with a short name each.
inline std::vector<std::pair<std::string, Groupoid>> fleet() {
  std::vector<std::pair<std::string, Groupoid>> out;
  for (int n = 1; n <= 6; ++n) out.emplace_back("C" + std::to_string(n), make_c(n));
  out.emplace_back("S3", make_s3());
  out.emplace_back("K4", make_k4());
  for (int n = 1; n <= 4; ++n) out.emplace_back("Pair(" + std::to_string(n) + ")", pair_groupoid(n));
  out.emplace_back("C2xPair(2)", make_c2p2());
  out.emplace_back("C3xPair(3)", make_c3p3());
  out.emplace_back("C2+C3", disjoint_union({make_c(2), make_c(3)}));
  out.emplace_back("union3", make_union3());
  return out;
}

// --- round-trip export -----------------------------------------------------

/// Re-export a validated groupoid as raw data (with its original labels), so
/// tests can feed it back through validate_groupoid or corrupt it first.
inline RawGroupoid to_raw(const Groupoid& g) {
  RawGroupoid raw;
  for (int x = 0; x < g->num_objects(); ++x) raw.objects.push_back(g->object_label(x));
  for (int m = 0; m < g->num_morphisms(); ++m)
    raw.morphisms.push_back({g->morphism_label(m), g->object_label(g->dom(m)),
                             g->object_label(g->cod(m))});
  for (int x = 0; x < g->num_objects(); ++x)
    raw.identities[g->object_label(x)] = g->morphism_label(g->identity(x));
  for (int a = 0; a < g->num_morphisms(); ++a)
    for (int b = 0; b < g->num_morphisms(); ++b)
      if (g->composable(a, b))
        raw.compose.push_back({g->morphism_label(a), g->morphism_label(b),
                               g->morphism_label(g->compose(a, b))});
  return raw;
}

// --- independent oracles ---------------------------------------------------

/// All subgroups by brute force over subsets (feasible up to order ~16):
/// every subset containing the identity, closed under the table and inverses.
inline std::vector<Subgroup> brute_force_subgroups(const LocalGroup& lg) {
  const int n = lg.order();
  std::vector<Subgroup> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << lg.identity))) continue;
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(i);
    bool closed = true;
    for (int a : elems) {
      if (!(mask & (1u << lg.inv[static_cast<std::size_t>(a)]))) closed = false;
      for (int b : elems)
        if (!(mask & (1u << lg.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])))
          closed = false;
    }
    if (closed) out.push_back(Subgroup{elems});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Burnside's lemma on a one-object groupoid: #orbits = (1/|G|) sum of fixed
/// points, computed straight from the action table.
inline int burnside_orbit_count(const GSet& x) {
  const Groupoid& g = x.base;
  long long fixed = 0;
  long long group_order = 0;
  for (int m = 0; m < g->num_morphisms(); ++m) {
    ++group_order;
    for (int p = 0; p < x.fiber[0]; ++p)
      if (x.act[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)] == p) ++fixed;
  }
  return static_cast<int>(fixed / group_order);
}

/// Order profile of a group table: map element-order -> count.
inline std::map<int, int> order_profile(const CayleyTable& t) {
  std::map<int, int> profile;
  for (int i = 0; i < t.order(); ++i) {
    int pow = i, ord = 1;
    while (pow != 0) {
      pow = t.mul[static_cast<std::size_t>(pow)][static_cast<std::size_t>(i)];
      ++ord;
    }
    ++profile[ord];
  }
  return profile;
}

}  // namespace grpd::testing
