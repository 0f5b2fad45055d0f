#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/specfile.hpp"
#include "oracle_helpers.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {
std::string data(const std::string& name) { return std::string(GRPD_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("parsing the declaration language") {
  GroupoidSpec spec = parse_spec(
      "# comment\n"
      "groupoid G {\n"
      "  component a { isotropy = cyclic(2); objects = 2; }\n"
      "  component b { isotropy = symmetric(3); objects = 1; }\n"
      "}\n");
  CHECK(spec.name == "G");
  REQUIRE(spec.components.size() == 2);
  CHECK(spec.components[0].isotropy_kind == "cyclic");
  CHECK(spec.components[0].n == 2);
  CHECK(spec.components[0].objects == 2);
  CHECK(spec.components[1].isotropy_kind == "symmetric");

  Groupoid g = materialize(spec);
  CHECK(connected_components(*g).count == 2);
  CHECK(g->num_morphisms() == 8 + 6);
}

TEST_CASE("single component materializes as group times pair groupoid") {
  GroupoidSpec spec =
      parse_spec("groupoid G { component a { isotropy = cyclic(2); objects = 2; } }");
  Groupoid g = materialize(spec);
  CHECK(connected_components(*g).count == 1);
  CHECK(g->num_objects() == 2);
  CHECK(g->num_morphisms() == 8);
  StructureIsoWitness w = structure_iso_check(*g, make_transversal(*g));
  CHECK(w.ok());
  CHECK(w.isotropy_order == 2);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_spec("groupoid G {\n  component a { isotropy = cyclic(2); objects = 0; }\n}");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec("groupoid G { }"), SyntaxError);                  // no components
  CHECK_THROWS_AS(parse_spec("groupoid G { component a { } }"), SyntaxError);  // empty body
  CHECK_THROWS_AS(parse_spec("groupoid { component a { isotropy = cyclic(1); objects = 1; } }"),
                  SyntaxError);  // missing name
  CHECK_THROWS_AS(parse_spec("groupoid G {\n  component a { isotropy = cyclic(0); objects = 1; }\n}"),
                  SyntaxError);  // group order < 1
  CHECK_THROWS_AS(
      parse_spec("groupoid G { component a { isotropy = dihedral(4); objects = 1; } }"),
      UnknownGroupExprError);
  CHECK_THROWS_AS(parse_spec("groupoid G { component a { isotropy = table(\"unterminated; } }"),
                  SyntaxError);
}

TEST_CASE("raw JSON documents load and validate") {
  Groupoid g = parse_raw_json(R"({
    "objects": [0],
    "morphisms": [{"id": 0, "dom": 0, "cod": 0}, {"id": 1, "dom": 0, "cod": 0}],
    "identities": {"0": 0},
    "compose": [[0,0,0],[0,1,1],[1,0,1],[1,1,0]]
  })");
  CHECK(g->num_morphisms() == 2);

  CHECK_THROWS_AS(parse_raw_json("{not json"), FormatError);
  CHECK_THROWS_AS(parse_raw_json(R"({"objects": "zero"})"), FormatError);
  // Structurally fine JSON, broken groupoid: the missing composite surfaces.
  CHECK_THROWS_AS(parse_raw_json(R"({
    "objects": [0],
    "morphisms": [{"id": 0, "dom": 0, "cod": 0}, {"id": 1, "dom": 0, "cod": 0}],
    "identities": {"0": 0},
    "compose": [[0,0,0],[0,1,1],[1,0,1]]
  })"),
                  MissingCompositeError);
}

TEST_CASE("loading files resolves formats and relative table paths") {
  Groupoid u = load_groupoid(data("union3.gd"));
  CHECK(u->num_objects() == 6);
  CHECK(u->num_morphisms() == 20);

  // table() paths resolve against the declaration file's directory.
  Groupoid k = load_groupoid(data("klein.gd"));
  CHECK(k->num_morphisms() == 4);
  LocalGroup lg = isotropy_group(*k, 0);
  for (int i = 0; i < 4; ++i)
    CHECK(lg.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] == 0);
}

TEST_CASE("loading the corrupted fixtures names each failure") {
  CHECK_THROWS_AS(load_groupoid("/nonexistent/nowhere.gd"), FileNotFoundError);
  CHECK_THROWS_AS(load_groupoid(data("bad_syntax.gd")), SyntaxError);
  CHECK_THROWS_AS(group_groupoid(load_cayley_table(data("bad_assoc.tbl"))),
                  AssociativityViolationError);
  CHECK_THROWS_AS(load_cayley_table(data("bad_identity.tbl")), BadIdentityError);
  CHECK_THROWS_AS(group_groupoid(load_cayley_table(data("bad_inverse.tbl"))), NoInverseError);
  CHECK_THROWS_AS(load_cayley_table(data("bad_format.tbl")), FormatError);
  CHECK_THROWS_AS(load_groupoid(data("bad_composability.json")), MissingCompositeError);
}
