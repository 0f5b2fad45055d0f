#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grpd/burnside.hpp"
#include "grpd/endo.hpp"
#include "grpd/errors.hpp"
#include "grpd/specfile.hpp"
#include "grpd/verify.hpp"

namespace {

using grpd::Index;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBoundStrict = 3;

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> primes;
  std::string format = "text";
  bool deep = false;
  bool strict = false;

  bool json() const { return format == "json"; }
  grpd::Options verify_options() const {
    grpd::Options o;
    o.seed = seed;
    o.primes = primes;
    o.deep = deep;
    return o;
  }
};

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json sparse_terms_json(const grpd::SparseVec<grpd::Rational>& terms) {
  ordered_json arr = ordered_json::array();
  for (const auto& [k, c] : terms) arr.push_back({k, c.str()});
  return arr;
}

ordered_json algebra_json(const grpd::SCAlgebra<grpd::Rational>& a) {
  ordered_json j;
  j["dim"] = a.dim();
  j["labels"] = a.labels();
  ordered_json unit = ordered_json::array();
  for (Index i = 0; i < a.dim(); ++i) unit.push_back(a.unit()(i).str());
  j["unit"] = unit;
  ordered_json products = ordered_json::array();
  for (Index i = 0; i < a.dim(); ++i)
    for (Index k = 0; k < a.dim(); ++k) {
      auto terms = a.product_terms(static_cast<int>(i), static_cast<int>(k));
      if (terms.empty()) continue;
      ordered_json e;
      e["i"] = i;
      e["j"] = k;
      ordered_json ts = ordered_json::array();
      for (const auto& [b, c] : terms) ts.push_back({b, c.str()});
      e["terms"] = ts;
      products.push_back(std::move(e));
    }
  j["products"] = products;
  return j;
}

/// A center basis vector as a readable sum of basis labels.
std::string element_string(const grpd::VectorQ& v, const std::vector<std::string>& labels) {
  std::string s;
  for (Index i = 0; i < v.rows(); ++i) {
    if (v(i) == grpd::Rational(0)) continue;
    std::string coeff = v(i).str();
    if (!s.empty()) s += " + ";
    if (coeff == "1")
      s += labels[static_cast<std::size_t>(i)];
    else
      s += coeff + "*" + labels[static_cast<std::size_t>(i)];
  }
  return s.empty() ? "0" : s;
}

struct ComponentSummary {
  int base;
  int objects;
  int isotropy;
};

std::vector<ComponentSummary> summarize_components(const grpd::Groupoid& g) {
  grpd::ConnectedComponents comps = grpd::connected_components(*g);
  std::vector<ComponentSummary> out;
  for (int c = 0; c < comps.count; ++c) {
    int b = comps.representative[static_cast<std::size_t>(c)];
    int count = 0;
    for (int x = 0; x < g->num_objects(); ++x)
      if (comps.component_of[static_cast<std::size_t>(x)] == c) ++count;
    out.push_back({b, count, static_cast<int>(g->loops_at(b).size())});
  }
  return out;
}

int cmd_validate(const grpd::Groupoid& g, const GlobalOpts& opt) {
  auto comps = summarize_components(g);
  if (opt.json()) {
    ordered_json j;
    j["valid"] = true;
    j["objects"] = g->num_objects();
    j["morphisms"] = g->num_morphisms();
    j["components"] = comps.size();
    emit(j);
  } else {
    std::cout << "valid groupoid: " << g->num_objects() << " objects, " << g->num_morphisms()
              << " morphisms, " << comps.size() << " component" << (comps.size() == 1 ? "" : "s")
              << "\n";
  }
  return kExitPass;
}

int cmd_info(const grpd::Groupoid& g, const GlobalOpts& opt) {
  auto comps = summarize_components(g);
  ordered_json parts = ordered_json::array();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    ordered_json e;
    e["component"] = c;
    e["base_object"] = g->object_label(comps[c].base);
    e["objects"] = comps[c].objects;
    e["isotropy_order"] = comps[c].isotropy;
    try {
      grpd::LocalGroup lg = grpd::isotropy_group(*g, comps[c].base);
      e["subgroups"] = grpd::enumerate_subgroups(lg).size();
    } catch (const grpd::BoundExceededError& ex) {
      e["subgroups"] = nullptr;
      e["note"] = ex.what();
    }
    parts.push_back(std::move(e));
  }
  if (opt.json()) {
    ordered_json j;
    j["objects"] = g->num_objects();
    j["morphisms"] = g->num_morphisms();
    j["components"] = parts;
    emit(j);
  } else {
    std::cout << g->num_objects() << " objects, " << g->num_morphisms() << " morphisms, "
              << parts.size() << " component" << (parts.size() == 1 ? "" : "s") << "\n";
    for (const auto& e : parts) {
      std::cout << "  component " << e["component"] << ": base object " << e["base_object"]
                << ", " << e["objects"] << " object" << (e["objects"] == 1 ? "" : "s")
                << ", isotropy order " << e["isotropy_order"];
      if (e["subgroups"].is_null())
        std::cout << " (subgroup lattice skipped: " << e["note"].get<std::string>() << ")";
      else
        std::cout << ", " << e["subgroups"] << " subgroups";
      std::cout << "\n";
    }
  }
  return kExitPass;
}

int cmd_center(const grpd::Groupoid& g, const GlobalOpts& opt) {
  grpd::SCAlgebra<grpd::Rational> kg = grpd::groupoid_algebra(g);
  grpd::CenterData<grpd::Rational> z = grpd::center(kg);
  if (opt.json()) {
    ordered_json j;
    j["dim"] = z.dim();
    ordered_json basis = ordered_json::array();
    for (Index a = 0; a < z.dim(); ++a) {
      ordered_json coords = ordered_json::array();
      for (Index i = 0; i < kg.dim(); ++i)
        if (!(z.basis.cols(i, a) == grpd::Rational(0)))
          coords.push_back({kg.labels()[static_cast<std::size_t>(i)], z.basis.cols(i, a).str()});
      basis.push_back(std::move(coords));
    }
    j["basis"] = basis;
    j["center_algebra"] = algebra_json(z.algebra);
    emit(j);
  } else {
    std::cout << "dim Z(k[G]) = " << z.dim() << "\n";
    for (Index a = 0; a < z.dim(); ++a)
      std::cout << "  z" << a << " = " << element_string(z.basis.cols.col(a), kg.labels()) << "\n";
  }
  return kExitPass;
}

int cmd_yoshida(const grpd::Groupoid& g, const GlobalOpts& opt, bool dim_only, bool with_center) {
  grpd::Transversal t = grpd::make_transversal(*g, opt.seed);
  grpd::OrbitDimension d = grpd::yoshida_dimension(g, t);
  ordered_json j;
  j["dim"] = d.total;
  ordered_json per = ordered_json::array();
  for (Index x : d.per_component) per.push_back(x);
  j["per_component"] = per;

  if (!dim_only) {
    grpd::Bounds bounds;
    Index cap = bounds.effective_yoshida_center_dim(opt.deep);
    if (d.total > cap) {
      std::string note = "yoshida center bound: dim Y = " + std::to_string(d.total) +
                         " exceeds " + std::to_string(cap);
      if (opt.json()) {
        j["skipped"] = note;
        emit(j);
      } else {
        std::cout << "dim Y = " << d.total << "\nskipped (" << note << ")\n";
      }
      return opt.strict ? kExitBoundStrict : kExitPass;
    }
    grpd::YoshidaAlgebra y = grpd::yoshida_algebra(g, t);
    if (opt.json()) j["algebra"] = algebra_json(y.algebra());
    if (with_center) {
      grpd::CenterData<grpd::Rational> z = grpd::center(y.algebra());
      j["center_dim"] = z.dim();
      if (opt.json()) {
        ordered_json basis = ordered_json::array();
        for (Index a = 0; a < z.dim(); ++a) {
          ordered_json coords = ordered_json::array();
          for (Index i = 0; i < y.algebra().dim(); ++i)
            if (!(z.basis.cols(i, a) == grpd::Rational(0)))
              coords.push_back(
                  {y.algebra().labels()[static_cast<std::size_t>(i)], z.basis.cols(i, a).str()});
          basis.push_back(std::move(coords));
        }
        j["center_basis"] = basis;
      }
    }
  }

  if (opt.json()) {
    emit(j);
  } else {
    std::cout << "dim Y = " << d.total << " (per component:";
    for (Index x : d.per_component) std::cout << " " << x;
    std::cout << ")\n";
    if (j.contains("center_dim")) std::cout << "dim Z(Y) = " << j["center_dim"] << "\n";
  }
  return kExitPass;
}

int cmd_burnside(const grpd::Groupoid& g, const GlobalOpts& opt, bool with_table, bool with_rho) {
  grpd::Transversal t = grpd::make_transversal(*g, opt.seed);
  grpd::BurnsideRing ring = grpd::burnside_ring(g, t);
  const auto& cls = ring.classes;

  ordered_json j;
  j["classes"] = ordered_json::array();
  for (Index i = 0; i < cls.size(); ++i) {
    const grpd::CrossedClass& c = cls.classes[static_cast<std::size_t>(i)];
    ordered_json e;
    e["index"] = i;
    e["component"] = c.component;
    e["base_object"] = g->object_label(c.base);
    e["subgroup_order"] = c.sub.order();
    e["subgroup"] = c.sub.elems;
    e["label"] = c.label;
    j["classes"].push_back(std::move(e));
  }

  bool oracle_ok = true;
  if (with_table) {
    ordered_json table = ordered_json::array();
    for (Index i = 0; i < cls.size(); ++i)
      for (Index k = 0; k < cls.size(); ++k) {
        auto generic = ring.algebra.product_terms(static_cast<int>(i), static_cast<int>(k));
        grpd::SparseVec<grpd::Rational> generic_v(generic.begin(), generic.end());
        oracle_ok = oracle_ok && generic_v == grpd::multiply_oracle(g, cls, i, k);
        ordered_json e;
        e["i"] = i;
        e["j"] = k;
        e["terms"] = sparse_terms_json(generic_v);
        table.push_back(std::move(e));
      }
    j["table"] = table;
    j["oracle_agrees"] = oracle_ok;
  }

  std::optional<grpd::RhoData> rd;
  if (with_rho) {
    rd = grpd::rho(g, t);
    ordered_json rj;
    ordered_json cols = ordered_json::array();
    for (Index i = 0; i < cls.size(); ++i) {
      ordered_json col = ordered_json::array();
      for (Index m = 0; m < rd->matrix.rows(); ++m)
        if (!(rd->matrix(m, i) == grpd::Rational(0)))
          col.push_back({g->morphism_name(static_cast<int>(m)), rd->matrix(m, i).str()});
      cols.push_back(std::move(col));
    }
    rj["columns"] = cols;
    rj["rank"] = rd->rank;
    rj["dim_center"] = rd->center.dim();
    rj["image_central"] = rd->image_central;
    rj["unital"] = rd->report.unital;
    rj["multiplicative"] = rd->report.multiplicative;
    rj["surjective_onto_center"] = rd->surjective_onto_center;
    j["rho"] = rj;
  }

  if (opt.json()) {
    emit(j);
  } else {
    std::cout << cls.size() << " classes\n";
    for (const auto& e : j["classes"])
      std::cout << "  [" << e["index"] << "] component " << e["component"] << ", |H| = "
                << e["subgroup_order"] << ", label " << e["label"] << "\n";
    if (with_table)
      std::cout << "multiplication table: " << cls.size() * cls.size()
                << " products, double-coset oracle " << (oracle_ok ? "agrees" : "DISAGREES")
                << "\n";
    if (rd) {
      std::vector<std::string> names;
      for (int m = 0; m < g->num_morphisms(); ++m) names.push_back(g->morphism_name(m));
      for (Index i = 0; i < cls.size(); ++i)
        std::cout << "  rho[" << i << "] = " << element_string(rd->matrix.col(i), names) << "\n";
      std::cout << "rank " << rd->rank << ", dim Z(k[G]) = " << rd->center.dim()
                << (rd->surjective_onto_center ? ", surjective onto the center" : "") << "\n";
    }
  }
  if (with_table && !oracle_ok) return kExitVerifyFail;
  if (rd && !(rd->image_central && rd->report.unital && rd->report.multiplicative &&
              rd->surjective_onto_center))
    return kExitVerifyFail;
  return kExitPass;
}

int cmd_verify(const grpd::Groupoid& g, const GlobalOpts& opt,
               const std::vector<std::string>& only) {
  grpd::VerificationReport rep = grpd::run_checks(g, opt.verify_options(), only);
  if (opt.json()) {
    emit(grpd::report_to_json(rep));
  } else {
    std::cout << "groupoid: " << rep.objects << " objects, " << rep.morphisms << " morphisms, "
              << rep.components << " component" << (rep.components == 1 ? "" : "s") << "\n";
    std::cout << "seed " << rep.seed << ", primes";
    for (auto p : rep.primes) std::cout << " " << p;
    std::cout << (rep.deep ? ", deep" : "") << "\n\n";
    std::size_t width = 0;
    for (const auto& c : rep.checks) width = std::max(width, c.name.size());
    int pass = 0, fail = 0, skip = 0;
    for (const auto& c : rep.checks) {
      (c.status == grpd::CheckStatus::kPass   ? pass
       : c.status == grpd::CheckStatus::kFail ? fail
                                              : skip)++;
      std::cout << "  " << c.name << std::string(width - c.name.size() + 2, ' ')
                << grpd::to_string(c.status);
      std::cout << "  (" << static_cast<long long>(c.wall_ms) << " ms)";
      std::cout << "\n";
      if (!c.note.empty()) std::cout << "      " << c.note << "\n";
    }
    std::cout << "\n" << pass << " pass, " << fail << " fail, " << skip << " skipped\n";
  }
  if (rep.any_failed()) return kExitVerifyFail;
  if (opt.strict && rep.any_skipped()) return kExitBoundStrict;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for finite groupoids, their algebras, Yoshida algebras, and "
               "crossed Burnside rings"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts opt;
  app.add_option("--seed", opt.seed, "transversal seed");
  std::string primes_csv;
  app.add_option("--primes", primes_csv,
                 "comma-separated fingerprint primes (default: three smallest > |G1|)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--deep", opt.deep, "lift the Yoshida-center bound (minutes-scale)");
  app.add_flag("--strict", opt.strict, "exit 3 when any check was skipped for a bound");

  std::string file;
  auto add_file = [&file](CLI::App* cmd) {
    cmd->add_option("file", file, "groupoid declaration or raw JSON document")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "check the groupoid axioms");
  add_file(validate);
  CLI::App* info = app.add_subcommand("info", "summarize components and isotropy");
  add_file(info);
  CLI::App* centerc = app.add_subcommand("center", "center of the groupoid algebra");
  add_file(centerc);

  CLI::App* yoshida = app.add_subcommand("yoshida", "Yoshida algebra of the groupoid");
  add_file(yoshida);
  bool dim_only = false, with_center = false;
  yoshida->add_flag("--dim-only", dim_only, "orbit-count dimensions only");
  yoshida->add_flag("--center", with_center, "also compute the center");

  CLI::App* burnside = app.add_subcommand("burnside", "crossed Burnside ring");
  add_file(burnside);
  bool with_table = false, with_rho = false;
  burnside->add_flag("--table", with_table, "full multiplication table with oracle cross-check");
  burnside->add_flag("--rho", with_rho, "the map to the center of the groupoid algebra");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_file(verify);
  bool all_checks = false;
  std::vector<std::string> only;
  verify->add_flag("--all", all_checks, "run every check (the default)");
  verify->add_option("--check", only, "run one named check (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    for (std::size_t pos = 0; pos < primes_csv.size();) {
      std::size_t comma = primes_csv.find(',', pos);
      if (comma == std::string::npos) comma = primes_csv.size();
      std::string tok = primes_csv.substr(pos, comma - pos);
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
      }
      if (tok.empty() || used != tok.size() || v == 0 || v > 0xffffffffULL)
        throw grpd::BadPrimeError("--primes entry '" + tok + "' is not a number");
      opt.primes.push_back(static_cast<std::uint32_t>(v));
      pos = comma + 1;
    }
    for (std::uint32_t p : opt.primes)
      if (!grpd::is_prime_u32(p))
        throw grpd::BadPrimeError("--primes entry " + std::to_string(p) + " is not prime");

    grpd::Groupoid g = grpd::load_groupoid(file);
    if (validate->parsed()) return cmd_validate(g, opt);
    if (info->parsed()) return cmd_info(g, opt);
    if (centerc->parsed()) return cmd_center(g, opt);
    if (yoshida->parsed()) return cmd_yoshida(g, opt, dim_only, with_center);
    if (burnside->parsed()) return cmd_burnside(g, opt, with_table, with_rho);
    if (verify->parsed()) return cmd_verify(g, opt, only);
    return kExitInputError;
  } catch (const grpd::BoundExceededError& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return opt.strict ? kExitBoundStrict : kExitPass;
  } catch (const grpd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
