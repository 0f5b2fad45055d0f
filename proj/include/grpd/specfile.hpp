#pragma once

#include <string>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd {

/// One component declaration: a base group and how many objects it spreads
/// over (materialized as group × Pair(objects)).
struct ComponentSpec {
  std::string name;
  std::string isotropy_kind;  // cyclic | symmetric | klein4 | table
  int n = 0;                  // argument of cyclic/symmetric
  std::string table_path;     // argument of table
  int objects = 0;
};

struct GroupoidSpec {
  std::string name;
  std::vector<ComponentSpec> components;
};

/// Parse the declaration language:
///   groupoid IDENT { component IDENT { isotropy = gexpr; objects = INT; } ... }
/// with '#' line comments. Throws SyntaxError (with line/column),
/// UnknownGroupExprError.
GroupoidSpec parse_spec(const std::string& text);

/// Build the declared groupoid: per component the product of the isotropy
/// group with Pair(objects), then the disjoint union. Relative table paths
/// resolve against base_dir.
Groupoid materialize(const GroupoidSpec& spec, const std::string& base_dir = ".");

/// Raw groupoid document: {"objects": [...], "morphisms": [{"id","dom","cod"}],
/// "identities": {object: id}, "compose": [[g, f, gf], ...]}.
Groupoid parse_raw_json(const std::string& text);

/// Read a groupoid from a file in either format, sniffed by the first
/// non-whitespace byte ('{' means the raw JSON document).
Groupoid load_groupoid(const std::string& path);

}  // namespace grpd
