#include "grpd/specfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grpd/errors.hpp"

namespace grpd {

namespace {

struct Token {
  enum Kind { kIdent, kInt, kString, kSymbol, kEnd };
  Kind kind = kEnd;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;  // kEnd
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::kIdent;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        t.text += take();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::kInt;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        t.text += take();
      t.value = std::stoll(t.text);
      return t;
    }
    if (c == '"') {
      t.kind = Token::kString;
      take();
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') t.text += take();
      if (pos_ >= text_.size() || text_[pos_] != '"')
        throw SyntaxError("unterminated string", t.line, t.col);
      take();
      return t;
    }
    if (std::string("{}=;()").find(c) != std::string::npos) {
      t.kind = Token::kSymbol;
      t.text = take();
      return t;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  GroupoidSpec spec() {
    GroupoidSpec s;
    keyword("groupoid");
    s.name = ident("groupoid name");
    symbol("{");
    while (!at_symbol("}")) s.components.push_back(component());
    symbol("}");
    if (cur_.kind != Token::kEnd)
      throw SyntaxError("trailing input after the groupoid block", cur_.line, cur_.col);
    if (s.components.empty())
      throw SyntaxError("groupoid '" + s.name + "' declares no components", 1, 1);
    return s;
  }

 private:
  ComponentSpec component() {
    ComponentSpec c;
    keyword("component");
    c.name = ident("component name");
    symbol("{");
    keyword("isotropy");
    symbol("=");
    gexpr(c);
    symbol(";");
    keyword("objects");
    symbol("=");
    Token t = cur_;
    c.objects = static_cast<int>(integer("object count"));
    if (c.objects < 1) throw SyntaxError("object count must be at least 1", t.line, t.col);
    symbol(";");
    symbol("}");
    return c;
  }

  void gexpr(ComponentSpec& c) {
    Token t = cur_;
    std::string kind = ident("group expression");
    c.isotropy_kind = kind;
    if (kind == "klein4") return;
    if (kind == "cyclic" || kind == "symmetric") {
      symbol("(");
      Token arg = cur_;
      c.n = static_cast<int>(integer("group order parameter"));
      if (c.n < 1) throw SyntaxError(kind + " parameter must be at least 1", arg.line, arg.col);
      symbol(")");
      return;
    }
    if (kind == "table") {
      symbol("(");
      if (cur_.kind != Token::kString)
        throw SyntaxError("table() takes a quoted file path", cur_.line, cur_.col);
      c.table_path = cur_.text;
      advance();
      symbol(")");
      return;
    }
    throw UnknownGroupExprError("unknown group expression '" + kind + "' (line " +
                                std::to_string(t.line) + ", column " + std::to_string(t.col) +
                                "); expected cyclic(n), symmetric(n), klein4, or table(\"path\")");
  }

  void advance() { cur_ = lex_.next(); }
  void keyword(const std::string& word) {
    if (cur_.kind != Token::kIdent || cur_.text != word)
      throw SyntaxError("expected '" + word + "', found " + describe(), cur_.line, cur_.col);
    advance();
  }
  std::string ident(const std::string& what) {
    if (cur_.kind != Token::kIdent)
      throw SyntaxError("expected " + what + ", found " + describe(), cur_.line, cur_.col);
    std::string s = cur_.text;
    advance();
    return s;
  }
  long long integer(const std::string& what) {
    if (cur_.kind != Token::kInt)
      throw SyntaxError("expected " + what + ", found " + describe(), cur_.line, cur_.col);
    long long v = cur_.value;
    advance();
    return v;
  }
  bool at_symbol(const std::string& s) const {
    return cur_.kind == Token::kSymbol && cur_.text == s;
  }
  void symbol(const std::string& s) {
    if (!at_symbol(s))
      throw SyntaxError("expected '" + s + "', found " + describe(), cur_.line, cur_.col);
    advance();
  }
  std::string describe() const {
    switch (cur_.kind) {
      case Token::kEnd:
        return "end of input";
      case Token::kInt:
        return "number " + cur_.text;
      case Token::kString:
        return "string \"" + cur_.text + "\"";
      default:
        return "'" + cur_.text + "'";
    }
  }

  Lexer lex_;
  Token cur_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

GroupoidSpec parse_spec(const std::string& text) { return Parser(text).spec(); }

Groupoid materialize(const GroupoidSpec& spec, const std::string& base_dir) {
  std::vector<Groupoid> parts;
  for (const ComponentSpec& c : spec.components) {
    CayleyTable table;
    if (c.isotropy_kind == "cyclic") {
      table = cyclic_table(c.n);
    } else if (c.isotropy_kind == "symmetric") {
      table = symmetric_table(c.n);
    } else if (c.isotropy_kind == "klein4") {
      table = klein4_table();
    } else if (c.isotropy_kind == "table") {
      std::string path = c.table_path;
      if (!path.empty() && path.front() != '/' && !base_dir.empty())
        path = base_dir + "/" + path;
      table = load_cayley_table(path);
    } else {
      throw UnknownGroupExprError("unknown group expression '" + c.isotropy_kind + "'");
    }
    Groupoid group = group_groupoid(table);
    parts.push_back(c.objects == 1 ? group : product_groupoid(group, pair_groupoid(c.objects)));
  }
  return parts.size() == 1 ? parts.front() : disjoint_union(parts);
}

Groupoid parse_raw_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  try {
    RawGroupoid raw;
    for (const auto& o : doc.at("objects")) raw.objects.push_back(o.get<int>());
    for (const auto& m : doc.at("morphisms"))
      raw.morphisms.push_back(
          {m.at("id").get<int>(), m.at("dom").get<int>(), m.at("cod").get<int>()});
    for (const auto& [key, val] : doc.at("identities").items())
      raw.identities[std::stoi(key)] = val.get<int>();
    for (const auto& entry : doc.at("compose")) {
      if (!entry.is_array() || entry.size() != 3)
        throw FormatError("compose entries must be [g, f, gf] triples");
      raw.compose.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>()});
    }
    return validate_groupoid(raw);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("raw groupoid document: ") + e.what());
  }
}

Groupoid load_groupoid(const std::string& path) {
  std::string text = read_file(path);
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '{') return parse_raw_json(text);

  std::string dir = ".";
  if (auto slash = path.find_last_of('/'); slash != std::string::npos) dir = path.substr(0, slash);
  return materialize(parse_spec(text), dir);
}

}  // namespace grpd
