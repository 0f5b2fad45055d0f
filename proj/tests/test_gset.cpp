#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grpd/gset.hpp"
#include "oracle_helpers.hpp"

using namespace grpd;
using namespace grpd::testing;

TEST_CASE("conjugation monoid is a lawful G-monoid") {
  for (const auto& [name, g] : fleet()) {
    if (g->num_morphisms() > 30) continue;
    CAPTURE(name);
    GMonoid m = conjugation_monoid(g);
    m.set.check_functorial();
    m.check_monoid();
    for (int x = 0; x < g->num_objects(); ++x)
      CHECK(m.set.fiber[static_cast<std::size_t>(x)] ==
            static_cast<int>(g->loops_at(x).size()));
  }
}

TEST_CASE("conjugation orbits of S3 are its conjugacy classes") {
  GMonoid m = conjugation_monoid(make_s3());
  auto orbs = orbits(m.set);
  std::multiset<std::size_t> sizes;
  for (const auto& o : orbs) sizes.insert(o.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
}

TEST_CASE("functoriality audit catches deliberate damage") {
  GSet x = conjugation_monoid(make_c(3)).set;
  CHECK(x.functorial_violation().empty());
  // Swap two action values so act(g) is no longer compatible.
  std::swap(x.act[1][0], x.act[1][1]);
  CHECK_FALSE(x.functorial_violation().empty());
  CHECK_THROWS_AS(x.check_functorial(), InvariantViolationError);
}

TEST_CASE("subgroup lattices match the brute-force oracle") {
  struct Row {
    Groupoid g;
    std::size_t expect;
  };
  std::vector<std::pair<std::string, Row>> rows = {
      {"C2", {make_c(2), 2}},  {"C3", {make_c(3), 2}}, {"C4", {make_c(4), 3}},
      {"C6", {make_c(6), 4}},  {"S3", {make_s3(), 6}}, {"K4", {make_k4(), 5}},
  };
  for (const auto& [name, row] : rows) {
    CAPTURE(name);
    LocalGroup lg = isotropy_group(*row.g, 0);
    std::vector<Subgroup> subs = enumerate_subgroups(lg);
    CHECK(subs.size() == row.expect);
    CHECK(subs == brute_force_subgroups(lg));
    for (const auto& h : subs) CHECK(is_subgroup(lg, h));
    // Sorted by order, then lexicographic elements.
    for (std::size_t i = 1; i < subs.size(); ++i) CHECK_FALSE(subs[i] < subs[i - 1]);
  }
  CHECK_THROWS_AS(enumerate_subgroups(isotropy_group(*make_s3(), 0), 5), BoundExceededError);
}

TEST_CASE("closure, cosets, centralizers, conjugates") {
  LocalGroup c4 = isotropy_group(*make_c(4), 0);
  Subgroup half = closure(c4, {2});
  CHECK(half.elems == std::vector<int>{0, 2});
  auto cosets = left_cosets(c4, half);
  REQUIRE(cosets.size() == 2);
  CHECK(cosets[0] == std::vector<int>{0, 2});
  CHECK(cosets[1] == std::vector<int>{1, 3});
  CHECK_THROWS_AS(left_cosets(c4, Subgroup{{0, 1}}), NotSubgroupError);

  LocalGroup s3 = isotropy_group(*make_s3(), 0);
  CHECK(closure(s3, {}).order() == 1);
  // The centralizer of the trivial subgroup is everything; of the full group,
  // the center (trivial for S3).
  CHECK(centralizer(s3, Subgroup{{0}}).size() == 6);
  Subgroup full = closure(s3, {1, 2, 3, 4, 5});
  CHECK(full.order() == 6);
  CHECK(centralizer(s3, full) == std::vector<int>{0});

  // Conjugating a transposition subgroup yields another transposition
  // subgroup; the three of them form one conjugacy orbit.
  std::set<Subgroup> orbit;
  std::vector<Subgroup> subs = enumerate_subgroups(s3);
  for (const auto& h : subs) {
    if (h.order() != 2) continue;
    for (int u = 0; u < s3.order(); ++u) orbit.insert(conjugate_subgroup(s3, h, u));
  }
  CHECK(orbit.size() == 3);
}

TEST_CASE("omega fiber sizes follow the coset-count formula") {
  struct Row {
    std::string name;
    Groupoid g;
    int fiber;
  };
  // Sum over subgroups H of [G : H].
  std::vector<Row> rows = {{"C2", make_c(2), 3},   {"C3", make_c(3), 4},
                           {"C4", make_c(4), 7},   {"C6", make_c(6), 12},
                           {"S3", make_s3(), 18},  {"K4", make_k4(), 11},
                           {"Pair(3)", pair_groupoid(3), 1}};
  for (const auto& row : rows) {
    CAPTURE(row.name);
    OmegaSet om = omega(row.g, make_transversal(*row.g));
    om.set.check_functorial();
    for (int x = 0; x < row.g->num_objects(); ++x)
      CHECK(om.set.fiber[static_cast<std::size_t>(x)] == row.fiber);
    // The decomposition bookkeeping covers the fiber exactly.
    for (int x = 0; x < row.g->num_objects(); ++x)
      CHECK(static_cast<int>(om.decomp[static_cast<std::size_t>(x)].size()) ==
            om.set.fiber[static_cast<std::size_t>(x)]);
  }
  Groupoid s3 = make_s3();
  CHECK_THROWS_AS(omega(s3, make_transversal(*s3), 5), BoundExceededError);
}

TEST_CASE("omega on the union keeps per-component subgroup counts") {
  Groupoid u = make_union3();
  OmegaSet om = omega(u, make_transversal(*u));
  om.set.check_functorial();
  CHECK(om.subgroup_count == std::vector<int>{2, 2, 1});
  // Fibers: 3 on the C2 x Pair(2) component, 4 on C3, 1 on Pair(3).
  std::vector<int> fibers(om.set.fiber.begin(), om.set.fiber.end());
  CHECK(fibers == std::vector<int>{3, 3, 4, 1, 1, 1});
}

TEST_CASE("orbit counts agree with Burnside's lemma on one-object groupoids") {
  for (const auto& g : {make_c(2), make_c(4), make_s3(), make_k4()}) {
    OmegaSet om = omega(g, make_transversal(*g));
    CHECK(static_cast<int>(orbits(om.set).size()) == burnside_orbit_count(om.set));
    GSet sq = gset_product(om.set, om.set);
    CHECK(static_cast<int>(orbits(sq).size()) == burnside_orbit_count(sq));
  }
}

TEST_CASE("orbits partition the points and are reachability-closed") {
  Groupoid u = make_union3();
  OmegaSet om = omega(u, make_transversal(*u));
  auto orbs = orbits(om.set);
  std::set<PointRef> seen;
  for (const auto& o : orbs) {
    REQUIRE(!o.empty());
    for (const auto& p : o) CHECK(seen.insert(p).second);
    // Closure under every morphism.
    for (const auto& p : o)
      for (int m = 0; m < u->num_morphisms(); ++m) {
        if (u->dom(m) != p.object) continue;
        PointRef q{u->cod(m), om.set.act[static_cast<std::size_t>(m)]
                                        [static_cast<std::size_t>(p.point)]};
        CHECK(std::find(o.begin(), o.end(), q) != o.end());
      }
  }
  CHECK(static_cast<int>(seen.size()) == om.set.total_points());
}

TEST_CASE("stabilizers of omega points recover the defining subgroups") {
  Groupoid c4 = make_c(4);
  OmegaSet om = omega(c4, make_transversal(*c4));
  LocalGroup lg = isotropy_group(*c4, 0);
  std::vector<Subgroup> subs = enumerate_subgroups(lg);
  for (int p = 0; p < om.set.fiber[0]; ++p) {
    auto [sub_idx, coset] = om.decomp[0][static_cast<std::size_t>(p)];
    // C4 is abelian, so every point of G/H has stabilizer exactly H.
    CHECK(stabilizer(om.set, lg, p) == subs[static_cast<std::size_t>(sub_idx)]);
  }
}

TEST_CASE("gset product and restriction") {
  Groupoid u = make_union3();
  OmegaSet om = omega(u, make_transversal(*u));
  GSet sq = gset_product(om.set, om.set);
  sq.check_functorial();
  for (std::size_t x = 0; x < om.set.fiber.size(); ++x)
    CHECK(sq.fiber[x] == om.set.fiber[x] * om.set.fiber[x]);

  for (int c = 0; c < 3; ++c) {
    SubgroupoidView view = component_subgroupoid(u, c);
    GSet r = restrict(om.set, view);
    r.check_functorial();
    for (int x = 0; x < view.sub->num_objects(); ++x)
      CHECK(r.fiber[static_cast<std::size_t>(x)] ==
            om.set.fiber[static_cast<std::size_t>(view.object_in_parent[static_cast<std::size_t>(x)])]);
  }
}

TEST_CASE("omega point labels name subgroup and coset") {
  Groupoid c2 = make_c(2);
  OmegaSet om = omega(c2, make_transversal(*c2));
  std::set<std::string> labels;
  for (int p = 0; p < om.set.fiber[0]; ++p) labels.insert(om.set.label(0, p));
  CHECK(labels.size() == 3);  // distinct labels per point
}
