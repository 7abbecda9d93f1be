// Verification suites: named checks over charts, seeds, and sampled points,
// aggregated into a machine-readable report with the convention ledger.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dkl/fermion_compare.hpp"
#include "dkl/sectors.hpp"

namespace dkl {

struct RunConfig {
  std::vector<std::string> charts;   // empty = every catalog chart
  std::vector<std::uint64_t> seeds;  // empty = {1, 2, 3}
  int points = 32;
  int degree = 2;
  double bound = 1.0;
  double mass = 1.0;
  std::map<std::string, double> chart_params;  // overrides applied to all charts

  void validate() const;  // throws std::invalid_argument
  std::vector<std::string> chart_names() const;
  std::vector<std::uint64_t> seed_list() const;
};

struct CheckResult {
  std::string name;
  std::string chart;  // empty for chart-independent checks
  std::uint64_t seed = 0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<CheckResult> suite_algebra(const GammaBasis& gb);
std::vector<CheckResult> suite_geometry(const RunConfig& cfg, const GammaBasis& gb);
std::vector<CheckResult> suite_equivalence(const RunConfig& cfg, const GammaBasis& gb);
std::vector<CheckResult> suite_sectors(const RunConfig& cfg, const GammaBasis& gb);
std::vector<CheckResult> suite_compare_v(const RunConfig& cfg, const GammaBasis& gb);

// FNV-1a over the serialized gamma matrix entries; pins the basis convention
// in the report ledger.
std::string gamma_basis_hash(const GammaBasis& gb);

// Serialized report (JSON text): tool version, timestamp (isolated header
// field), config echo, convention ledger, check list, summary counts.
// Deterministic except for the timestamp.
std::string make_report(const RunConfig& cfg, const GammaBasis& gb,
                        const std::string& command,
                        const std::vector<CheckResult>& checks);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace dkl
