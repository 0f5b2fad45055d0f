#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "grpd/groupoid.hpp"
#include "grpd/linalg.hpp"

namespace grpd {

/// Size guards. Skipped checks always name the bound they tripped over.
struct Bounds {
  int max_morphisms = 200;            // |𝒢₁| cap for running the harness at all
  Index yoshida_center_dim = 200;     // build Y and its center only up to this dim Y
  Index deep_yoshida_center_dim = 1000;  // the same bound under --deep
  Index intertwiner_unknowns = 1500;  // naive solve cap on Σ |fiber|²
  int subgroup_order = 48;            // isotropy order cap for subgroup lattices

  Index effective_yoshida_center_dim(bool deep) const {
    return deep ? deep_yoshida_center_dim : yoshida_center_dim;
  }
};

struct Options {
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> primes;  // empty: three smallest primes > |𝒢₁|
  bool deep = false;
  Bounds bounds;
};

enum class CheckStatus { kPass, kFail, kSkipped };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kSkipped;
  std::string note;                  // failure summary, or the violated bound
  nlohmann::ordered_json witnesses;  // dimensions, ranks, fingerprints, counterexamples
  double wall_ms = 0;                // shown in text reports only, never serialized
};

struct VerificationReport {
  int objects = 0;
  int morphisms = 0;
  int components = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> primes;
  bool deep = false;
  std::vector<CheckResult> checks;  // ordered by check name

  bool any_failed() const;
  bool any_skipped() const;
};

/// The fixed check vocabulary, sorted; `--check=NAME` values.
const std::vector<std::string>& check_names();

/// Run the named checks (all of them when `only` is empty) and assemble the
/// report. A groupoid over the morphism bound yields a report with every
/// requested check skipped; unknown check names throw FormatError.
VerificationReport run_checks(const Groupoid& g, const Options& opt,
                              const std::vector<std::string>& only = {});

/// Deterministic serialization: no timings, keys in fixed order, so equal
/// reports are byte-identical.
nlohmann::ordered_json report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace grpd
