#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "grpd/verify.hpp"
#include "oracle_helpers.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

const CheckResult& find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("check not in report: " + name);
}

}  // namespace

TEST_CASE("the check vocabulary is fixed and sorted") {
  const auto& names = check_names();
  CHECK(names.size() == 12);
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const char* expect :
       {"burnside-decomposition", "burnside-mult-oracle", "center-decomposition",
        "center-transport", "product-decomposition", "rho-onto-yoshida-center", "rho-ring-hom",
        "rho-surjective", "structure-iso", "transversal-independence", "yoshida-center-iso",
        "yoshida-dim-oracle"})
    CHECK(std::find(names.begin(), names.end(), expect) != names.end());
}

TEST_CASE("all checks pass on C2 and report real witnesses") {
  VerificationReport r = run_checks(make_c(2), Options{});
  CHECK(r.objects == 1);
  CHECK(r.morphisms == 2);
  CHECK(r.components == 1);
  CHECK(r.primes == std::vector<std::uint32_t>{3, 5, 7});
  CHECK(r.checks.size() == 12);
  CHECK_FALSE(r.any_failed());
  CHECK_FALSE(r.any_skipped());
  // Reports come back in check-name order.
  for (std::size_t i = 1; i < r.checks.size(); ++i)
    CHECK(r.checks[i - 1].name < r.checks[i].name);

  CHECK(find_check(r, "center-decomposition").witnesses.at("dim_center") == 2);
  CHECK(find_check(r, "yoshida-dim-oracle").witnesses.at("orbit_dimension") == 41);
  CHECK(find_check(r, "yoshida-dim-oracle").witnesses.at("naive_dimension") == 41);
  CHECK(find_check(r, "rho-surjective").witnesses.at("rank") == 2);
  CHECK(find_check(r, "yoshida-center-iso").witnesses.at("dim_yoshida_center") == 2);
}

TEST_CASE("check selection and unknown names") {
  VerificationReport r = run_checks(make_c(2), Options{}, {"structure-iso"});
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].name == "structure-iso");
  CHECK(r.checks[0].status == CheckStatus::kPass);

  CHECK_THROWS_AS(run_checks(make_c(2), Options{}, {"bogus-check"}), FormatError);
}

TEST_CASE("bounded checks skip with the bound in the note") {
  VerificationReport r = run_checks(make_s3(), Options{});
  CHECK_FALSE(r.any_failed());
  CHECK(r.any_skipped());
  const CheckResult& yci = find_check(r, "yoshida-center-iso");
  CHECK(yci.status == CheckStatus::kSkipped);
  CHECK(yci.note.find("bound") != std::string::npos);
  CHECK(yci.note.find("17651") != std::string::npos);
  const CheckResult& ydo = find_check(r, "yoshida-dim-oracle");
  CHECK(ydo.status == CheckStatus::kSkipped);
  CHECK(ydo.note.find("naive intertwiner bound") != std::string::npos);
  const CheckResult& roy = find_check(r, "rho-onto-yoshida-center");
  CHECK(roy.status == CheckStatus::kSkipped);
  // Everything else passes.
  int pass = 0;
  for (const auto& c : r.checks)
    if (c.status == CheckStatus::kPass) ++pass;
  CHECK(pass == 9);
}

TEST_CASE("a groupoid over the morphism bound skips everything") {
  Options opt;
  opt.bounds.max_morphisms = 5;
  VerificationReport r = run_checks(make_s3(), opt);
  CHECK(r.checks.size() == 12);
  for (const auto& c : r.checks) {
    CHECK(c.status == CheckStatus::kSkipped);
    CHECK(c.note.find("morphism count bound") != std::string::npos);
  }
}

TEST_CASE("seeds do not move dimensions") {
  std::vector<nlohmann::ordered_json> dims;
  for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
    Options opt;
    opt.seed = seed;
    VerificationReport r = run_checks(make_c2p2(), opt);
    CHECK_FALSE(r.any_failed());
    nlohmann::ordered_json d;
    d["z"] = find_check(r, "center-decomposition").witnesses.at("dim_center");
    d["y"] = find_check(r, "yoshida-dim-oracle").witnesses.at("orbit_dimension");
    d["zy"] = find_check(r, "yoshida-center-iso").witnesses.at("dim_yoshida_center");
    d["rank"] = find_check(r, "rho-surjective").witnesses.at("rank");
    dims.push_back(d);
  }
  CHECK(dims[0] == dims[1]);
  CHECK(dims[0] == dims[2]);
}

TEST_CASE("prime overrides flow into the report") {
  Options opt;
  opt.primes = {5, 7};
  VerificationReport r = run_checks(make_c(2), opt);
  CHECK(r.primes == std::vector<std::uint32_t>{5, 7});
  const auto& fp = find_check(r, "yoshida-center-iso").witnesses.at("fingerprints");
  CHECK(fp.at("groupoid_center").at("counts").contains("5"));
  CHECK(fp.at("groupoid_center").at("counts").contains("7"));
}

TEST_CASE("serialization round-trips byte-identically and drops timings") {
  VerificationReport r = run_checks(make_c(2), Options{});
  nlohmann::ordered_json j = report_to_json(r);
  CHECK_FALSE(j.dump().find("wall_ms") != std::string::npos);
  VerificationReport back = report_from_json(j);
  nlohmann::ordered_json j2 = report_to_json(back);
  CHECK(j.dump(2) == j2.dump(2));
  CHECK(back.morphisms == r.morphisms);
  CHECK(back.checks.size() == r.checks.size());
}
