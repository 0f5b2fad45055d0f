#include "grpd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>

#include "grpd/burnside.hpp"
#include "grpd/endo.hpp"
#include "grpd/errors.hpp"

namespace grpd {

using nlohmann::ordered_json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    default:
      return "skipped";
  }
}

bool VerificationReport::any_failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::kFail; });
}

bool VerificationReport::any_skipped() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::kSkipped; });
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "burnside-decomposition",
      "burnside-mult-oracle",
      "center-decomposition",
      "center-transport",
      "product-decomposition",
      "rho-onto-yoshida-center",
      "rho-ring-hom",
      "rho-surjective",
      "structure-iso",
      "transversal-independence",
      "yoshida-center-iso",
      "yoshida-dim-oracle",
  };
  return names;
}

namespace {

ordered_json map_report_json(const RingMapReport& rep) {
  ordered_json j;
  j["unital"] = rep.unital;
  j["multiplicative"] = rep.multiplicative;
  j["rank"] = rep.rank;
  j["injective"] = rep.injective;
  j["surjective"] = rep.surjective;
  if (rep.first_failure)
    j["first_failure"] = {rep.first_failure->first, rep.first_failure->second};
  return j;
}

ordered_json fingerprint_json(const Fingerprint& fp) {
  ordered_json j;
  j["dimension"] = fp.dimension;
  ordered_json counts = ordered_json::object();
  for (const auto& [p, c] : fp.counts) counts[std::to_string(p)] = c;
  j["counts"] = counts;
  ordered_json excluded = ordered_json::object();
  for (const auto& [p, why] : fp.excluded) excluded[std::to_string(p)] = why;
  j["excluded"] = excluded;
  return j;
}

Index square_unknowns(const GSet& x) {
  Index n = 0;
  for (int f : x.fiber) n += static_cast<Index>(f) * f;
  return n;
}

struct Ctx {
  Groupoid g;
  const Options& opt;
  Index ybound;

  std::optional<Transversal> trans_;
  std::optional<SCAlgebra<Rational>> kg_;
  std::optional<CenterData<Rational>> zkg_;
  std::optional<OmegaSet> om_;
  std::optional<OrbitDimension> dimy_;
  std::optional<YoshidaAlgebra> yosh_;
  std::optional<CenterData<Rational>> zy_;
  std::optional<RhoData> rho_;

  Ctx(Groupoid gg, const Options& o)
      : g(std::move(gg)), opt(o), ybound(o.bounds.effective_yoshida_center_dim(o.deep)) {}

  const Transversal& t() {
    if (!trans_) trans_ = make_transversal(*g, opt.seed);
    return *trans_;
  }
  const SCAlgebra<Rational>& kg() {
    if (!kg_) kg_ = groupoid_algebra(g);
    return *kg_;
  }
  const CenterData<Rational>& zkg() {
    if (!zkg_) zkg_ = center(kg());
    return *zkg_;
  }
  const OmegaSet& om() {
    if (!om_) om_ = omega(g, t(), opt.bounds.subgroup_order);
    return *om_;
  }
  const OrbitDimension& dimy() {
    if (!dimy_) dimy_ = yoshida_dimension(g, t(), opt.bounds.subgroup_order);
    return *dimy_;
  }
  const YoshidaAlgebra& yosh() {
    if (!yosh_) {
      if (dimy().total > ybound)
        throw BoundExceededError("yoshida center bound: dim Y = " + std::to_string(dimy().total) +
                                 " exceeds " + std::to_string(ybound));
      yosh_ = yoshida_algebra(g, t(), opt.bounds.subgroup_order);
    }
    return *yosh_;
  }
  const CenterData<Rational>& zy() {
    if (!zy_) zy_ = center(yosh().algebra());
    return *zy_;
  }
  const RhoData& rho_data() {
    if (!rho_) rho_ = rho(g, t(), opt.bounds.subgroup_order);
    return *rho_;
  }
  std::vector<std::uint32_t> primes() const {
    if (!opt.primes.empty()) return opt.primes;
    return primes_above(static_cast<std::uint32_t>(g->num_morphisms()), 3);
  }
};

void check_center_decomposition(Ctx& c, CheckResult& r) {
  BlockCenterDecomposition d = center_decomposition(c.g);
  r.status = d.report.is_isomorphism() ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["dim_center"] = d.whole.dim();
  ordered_json parts = ordered_json::array();
  for (const auto& p : d.parts) parts.push_back(p.dim());
  r.witnesses["part_dims"] = parts;
  r.witnesses["map"] = map_report_json(d.report);
  if (r.status == CheckStatus::kFail) r.note = "center decomposition map is not an isomorphism";
}

void check_center_transport(Ctx& c, CheckResult& r) {
  ConnectedComponents comps = connected_components(*c.g);
  bool all_ok = true;
  bool sq_skipped = false;
  ordered_json entries = ordered_json::array();
  for (int ci = 0; ci < comps.count; ++ci) {
    SubgroupoidView view = component_subgroupoid(c.g, ci);
    Transversal tc = make_transversal(*view.sub, c.opt.seed);
    OmegaSet om = omega(view.sub, tc, c.opt.bounds.subgroup_order);

    TransportIso iso = center_transport_iso(view.sub, tc, om.set, c.opt.bounds.intertwiner_unknowns);
    all_ok = all_ok && iso.report.is_isomorphism();
    entries.push_back({{"component", ci},
                       {"gset", "omega"},
                       {"source_dim", iso.source.dim()},
                       {"target_dim", iso.target.dim()},
                       {"end_dim", iso.end_dim},
                       {"map", map_report_json(iso.report)}});

    GSet sq = gset_product(om.set, om.set);
    if (square_unknowns(sq) <= c.opt.bounds.intertwiner_unknowns) {
      TransportIso iso2 = center_transport_iso(view.sub, tc, sq, c.opt.bounds.intertwiner_unknowns);
      all_ok = all_ok && iso2.report.is_isomorphism();
      entries.push_back({{"component", ci},
                         {"gset", "omega^2"},
                         {"source_dim", iso2.source.dim()},
                         {"target_dim", iso2.target.dim()},
                         {"end_dim", iso2.end_dim},
                         {"map", map_report_json(iso2.report)}});
    } else {
      sq_skipped = true;
      entries.push_back({{"component", ci},
                         {"gset", "omega^2"},
                         {"skipped", "naive intertwiner bound: " +
                                         std::to_string(square_unknowns(sq)) +
                                         " unknowns exceed " +
                                         std::to_string(c.opt.bounds.intertwiner_unknowns)}});
    }
  }
  r.status = all_ok ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["components"] = entries;
  if (!all_ok)
    r.note = "transport map failed verification";
  else if (sq_skipped)
    r.note = "omega^2 transport over the naive intertwiner bound on some component; omega verified";
}

void check_product_decomposition(Ctx& c, CheckResult& r) {
  EndCenterDecomposition d =
      end_center_decomposition(c.g, c.om().set, c.opt.bounds.intertwiner_unknowns);
  r.status = d.report.is_isomorphism() ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["gset"] = "omega";
  r.witnesses["end_dim"] = d.end_dim;
  r.witnesses["dim_center"] = d.whole.dim();
  ordered_json parts = ordered_json::array();
  for (const auto& p : d.parts) parts.push_back(p.dim());
  r.witnesses["part_dims"] = parts;
  r.witnesses["map"] = map_report_json(d.report);
  if (r.status == CheckStatus::kFail) r.note = "product decomposition map is not an isomorphism";
}

void check_structure_iso(Ctx& c, CheckResult& r) {
  ConnectedComponents comps = connected_components(*c.g);
  bool all_ok = true;
  ordered_json entries = ordered_json::array();
  ordered_json seeds = ordered_json::array();
  for (int k = 0; k < 3; ++k) seeds.push_back(c.opt.seed + static_cast<std::uint64_t>(k));
  for (int ci = 0; ci < comps.count; ++ci) {
    SubgroupoidView view = component_subgroupoid(c.g, ci);
    StructureIsoWitness w{};
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      Transversal tc = make_transversal(*view.sub, c.opt.seed + static_cast<std::uint64_t>(k));
      w = structure_iso_check(*view.sub, tc);
      ok = ok && w.ok();
    }
    all_ok = all_ok && ok;
    entries.push_back({{"component", ci},
                       {"base_object", view.object_in_parent[static_cast<std::size_t>(w.base)]},
                       {"isotropy_order", w.isotropy_order},
                       {"objects", w.objects},
                       {"ok", ok}});
  }
  r.status = all_ok ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["seeds"] = seeds;
  r.witnesses["components"] = entries;
  if (!all_ok) r.note = "structure isomorphism failed on some component";
}

void check_transversal_independence(Ctx& c, CheckResult& r) {
  std::vector<std::uint64_t> seeds = {c.opt.seed, c.opt.seed + 1, c.opt.seed + 2};
  std::optional<std::vector<int>> fibers;
  std::optional<Index> dim_y;
  std::optional<Index> dim_zy;
  std::optional<MatrixQ> rho_matrix;
  bool agree = true;
  bool center_in_bounds = true;
  for (std::uint64_t seed : seeds) {
    Transversal ts = make_transversal(*c.g, seed);
    OmegaSet om = omega(c.g, ts, c.opt.bounds.subgroup_order);
    OrbitDimension dy = yoshida_dimension(c.g, ts, c.opt.bounds.subgroup_order);
    if (fibers && *fibers != om.set.fiber) agree = false;
    if (dim_y && *dim_y != dy.total) agree = false;
    fibers = om.set.fiber;
    dim_y = dy.total;

    if (dy.total <= c.ybound) {
      CenterData<Rational> zy = center(yoshida_algebra(c.g, ts, c.opt.bounds.subgroup_order).algebra());
      if (dim_zy && *dim_zy != zy.dim()) agree = false;
      dim_zy = zy.dim();
    } else {
      center_in_bounds = false;
    }

    RhoData rd = rho(c.g, ts, c.opt.bounds.subgroup_order);
    if (rho_matrix && *rho_matrix != rd.matrix) agree = false;
    rho_matrix = std::move(rd.matrix);
  }
  r.status = agree ? CheckStatus::kPass : CheckStatus::kFail;
  ordered_json sj = ordered_json::array();
  for (std::uint64_t s : seeds) sj.push_back(s);
  r.witnesses["seeds"] = sj;
  r.witnesses["omega_fibers"] = *fibers;
  r.witnesses["dim_yoshida"] = *dim_y;
  if (dim_zy) r.witnesses["dim_yoshida_center"] = *dim_zy;
  r.witnesses["rho_matrix_identical"] = agree;
  if (!agree)
    r.note = "a transversal-dependent quantity changed across seeds";
  else if (!center_in_bounds)
    r.note = "yoshida center bound: dim Y = " + std::to_string(*dim_y) + " exceeds " +
             std::to_string(c.ybound) + "; center dimension not compared";
}

void check_yoshida_center_iso(Ctx& c, CheckResult& r) {
  const CenterData<Rational>& zy = c.zy();  // bound enforced here
  bool dims_equal = zy.dim() == c.zkg().dim();

  std::vector<std::uint32_t> primes = c.primes();
  Integer morphisms = c.g->num_morphisms();
  Fingerprint fa = fingerprint(c.zkg().algebra, primes, morphisms);
  Fingerprint fb = fingerprint(zy.algebra, primes, morphisms);
  bool prints_equal = fa.counts == fb.counts && fa.excluded == fb.excluded;

  r.status = dims_equal && prints_equal ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["dim_groupoid_center"] = c.zkg().dim();
  r.witnesses["dim_yoshida_center"] = zy.dim();
  r.witnesses["dim_yoshida"] = c.dimy().total;
  r.witnesses["fingerprints"] = {{"groupoid_center", fingerprint_json(fa)},
                                 {"yoshida_center", fingerprint_json(fb)}};
  if (!dims_equal)
    r.note = "center dimensions differ";
  else if (!prints_equal)
    r.note = "fingerprints differ at some admissible prime";
}

void check_yoshida_dim_oracle(Ctx& c, CheckResult& r) {
  const OrbitDimension& orbit = c.dimy();
  GSet sq = gset_product(c.om().set, c.om().set);
  IntertwinerSpace sp = naive_intertwiners(c.g, sq, c.opt.bounds.intertwiner_unknowns);
  r.status = sp.basis.dim() == orbit.total ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["orbit_dimension"] = orbit.total;
  ordered_json parts = ordered_json::array();
  for (Index d : orbit.per_component) parts.push_back(d);
  r.witnesses["per_component"] = parts;
  r.witnesses["naive_dimension"] = sp.basis.dim();
  r.witnesses["unknowns"] = sp.unknowns;
  if (r.status == CheckStatus::kFail) r.note = "orbit count and naive intertwiner solve disagree";
}

void check_burnside_mult_oracle(Ctx& c, CheckResult& r) {
  CrossedClassList classes = enumerate_classes(c.g, c.t(), c.opt.bounds.subgroup_order);
  bool round_trip = true;
  std::optional<Index> bad_class;
  for (Index i = 0; i < classes.size() && round_trip; ++i) {
    VectorQ v =
        normalize(standard_model(c.g, classes.classes[static_cast<std::size_t>(i)]), c.g, c.t(),
                  classes);
    for (Index k = 0; k < v.rows() && round_trip; ++k)
      if (!(v(k) == (k == i ? Rational(1) : Rational(0)))) {
        round_trip = false;
        bad_class = i;
      }
  }
  bool tables_agree = true;
  std::optional<std::pair<Index, Index>> bad_pair;
  for (Index i = 0; i < classes.size() && tables_agree; ++i)
    for (Index j = 0; j < classes.size() && tables_agree; ++j)
      if (multiply_classes(c.g, c.t(), classes, i, j) != multiply_oracle(c.g, classes, i, j)) {
        tables_agree = false;
        bad_pair = {i, j};
      }
  r.status = round_trip && tables_agree ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["classes"] = classes.size();
  r.witnesses["pairs"] = classes.size() * classes.size();
  r.witnesses["round_trip"] = round_trip;
  r.witnesses["tables_agree"] = tables_agree;
  if (bad_class) {
    r.witnesses["first_bad_class"] = *bad_class;
    r.note = "normalize(standard_model) is not the unit vector";
  }
  if (bad_pair) {
    r.witnesses["first_mismatch"] = {bad_pair->first, bad_pair->second};
    r.note = "generic product and double-coset oracle disagree";
  }
}

void check_burnside_decomposition(Ctx& c, CheckResult& r) {
  BurnsideDecomposition d = burnside_decomposition(c.g, c.t(), c.opt.bounds.subgroup_order);
  r.status = d.report.is_isomorphism() ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["dim"] = d.whole.classes.size();
  ordered_json parts = ordered_json::array();
  for (const auto& p : d.parts) parts.push_back(p.classes.size());
  r.witnesses["part_dims"] = parts;
  r.witnesses["map"] = map_report_json(d.report);
  if (r.status == CheckStatus::kFail) r.note = "burnside decomposition map is not an isomorphism";
}

void check_rho_ring_hom(Ctx& c, CheckResult& r) {
  const RhoData& rd = c.rho_data();
  bool ok = rd.image_central && rd.report.unital && rd.report.multiplicative;
  r.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["classes"] = rd.classes.size();
  r.witnesses["image_central"] = rd.image_central;
  r.witnesses["map"] = map_report_json(rd.report);
  if (!ok) r.note = "rho is not a central unital ring homomorphism";
}

void check_rho_surjective(Ctx& c, CheckResult& r) {
  const RhoData& rd = c.rho_data();
  r.status = rd.surjective_onto_center ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["rank"] = rd.rank;
  r.witnesses["dim_center"] = rd.center.dim();
  if (r.status == CheckStatus::kFail) r.note = "rank of rho is below dim Z(k[G])";
}

void check_rho_onto_yoshida_center(Ctx& c, CheckResult& r) {
  const CenterData<Rational>& zy = c.zy();  // bound enforced here
  const RhoData& rd = c.rho_data();
  r.status = rd.rank == zy.dim() ? CheckStatus::kPass : CheckStatus::kFail;
  r.witnesses["rank"] = rd.rank;
  r.witnesses["dim_yoshida_center"] = zy.dim();
  if (r.status == CheckStatus::kFail) r.note = "rank of rho differs from dim Z(Y)";
}

void dispatch(Ctx& c, CheckResult& r) {
  if (r.name == "burnside-decomposition") return check_burnside_decomposition(c, r);
  if (r.name == "burnside-mult-oracle") return check_burnside_mult_oracle(c, r);
  if (r.name == "center-decomposition") return check_center_decomposition(c, r);
  if (r.name == "center-transport") return check_center_transport(c, r);
  if (r.name == "product-decomposition") return check_product_decomposition(c, r);
  if (r.name == "rho-onto-yoshida-center") return check_rho_onto_yoshida_center(c, r);
  if (r.name == "rho-ring-hom") return check_rho_ring_hom(c, r);
  if (r.name == "rho-surjective") return check_rho_surjective(c, r);
  if (r.name == "structure-iso") return check_structure_iso(c, r);
  if (r.name == "transversal-independence") return check_transversal_independence(c, r);
  if (r.name == "yoshida-center-iso") return check_yoshida_center_iso(c, r);
  if (r.name == "yoshida-dim-oracle") return check_yoshida_dim_oracle(c, r);
  throw FormatError("unknown check '" + r.name + "'");
}

CheckResult run_one(Ctx& c, const std::string& name) {
  CheckResult r;
  r.name = name;
  r.witnesses = ordered_json::object();
  auto start = std::chrono::steady_clock::now();
  try {
    dispatch(c, r);
  } catch (const BoundExceededError& e) {
    r.status = CheckStatus::kSkipped;
    r.note = e.what();
    r.witnesses = ordered_json::object();
  } catch (const FormatError&) {
    throw;  // unknown check name: an input error, not a verification result
  } catch (const Error& e) {
    r.status = CheckStatus::kFail;
    r.note = e.what();
  }
  r.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

VerificationReport run_checks(const Groupoid& g, const Options& opt,
                              const std::vector<std::string>& only) {
  std::vector<std::string> selected;
  if (only.empty()) {
    selected = check_names();
  } else {
    std::set<std::string> uniq(only.begin(), only.end());
    for (const std::string& name : uniq) {
      if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
        throw FormatError("unknown check '" + name + "'; valid names: " + [] {
          std::string all;
          for (const auto& n : check_names()) all += (all.empty() ? "" : ", ") + n;
          return all;
        }());
      selected.push_back(name);
    }
  }

  Ctx ctx(g, opt);
  VerificationReport rep;
  rep.objects = g->num_objects();
  rep.morphisms = g->num_morphisms();
  rep.components = connected_components(*g).count;
  rep.seed = opt.seed;
  rep.primes = ctx.primes();
  rep.deep = opt.deep;

  if (g->num_morphisms() > opt.bounds.max_morphisms) {
    for (const std::string& name : selected) {
      CheckResult r;
      r.name = name;
      r.status = CheckStatus::kSkipped;
      r.note = "morphism count bound: " + std::to_string(g->num_morphisms()) + " exceeds " +
               std::to_string(opt.bounds.max_morphisms);
      r.witnesses = ordered_json::object();
      rep.checks.push_back(std::move(r));
    }
    return rep;
  }

  for (const std::string& name : selected) rep.checks.push_back(run_one(ctx, name));
  return rep;
}

ordered_json report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["groupoid"] = {{"objects", r.objects}, {"morphisms", r.morphisms}, {"components", r.components}};
  ordered_json primes = ordered_json::array();
  for (std::uint32_t p : r.primes) primes.push_back(p);
  j["options"] = {{"seed", r.seed}, {"primes", primes}, {"deep", r.deep}};
  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : r.checks) {
    ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["note"] = c.note;
    e["witnesses"] = c.witnesses;
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  return j;
}

VerificationReport report_from_json(const ordered_json& j) {
  VerificationReport r;
  r.objects = j.at("groupoid").at("objects").get<int>();
  r.morphisms = j.at("groupoid").at("morphisms").get<int>();
  r.components = j.at("groupoid").at("components").get<int>();
  r.seed = j.at("options").at("seed").get<std::uint64_t>();
  for (const auto& p : j.at("options").at("primes")) r.primes.push_back(p.get<std::uint32_t>());
  r.deep = j.at("options").at("deep").get<bool>();
  for (const auto& e : j.at("checks")) {
    CheckResult c;
    c.name = e.at("name").get<std::string>();
    std::string status = e.at("status").get<std::string>();
    c.status = status == "pass"   ? CheckStatus::kPass
               : status == "fail" ? CheckStatus::kFail
                                  : CheckStatus::kSkipped;
    c.note = e.at("note").get<std::string>();
    c.witnesses = e.at("witnesses");
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace grpd
