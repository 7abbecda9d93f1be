// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit when any
// criterion fails. Criteria run on fixed configurations; timings are wall
// clock on the current machine.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "dkl/suites.hpp"

using namespace dkl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// worst margin over the checks whose name starts with any given prefix;
// ok = every matching check passed and at least one matched
struct Slice {
  bool ok = false;
  double worst = 0.0;
  int n = 0;
};

Slice slice(const std::vector<CheckResult>& checks,
            const std::vector<std::string>& prefixes) {
  Slice s;
  bool all = true;
  for (const CheckResult& c : checks)
    for (const std::string& p : prefixes)
      if (c.name.rfind(p, 0) == 0) {
        ++s.n;
        all = all && c.pass;
        // negative controls must pass but their (large) violations are not
        // error magnitudes
        if (c.name.find("negative_control") == std::string::npos &&
            c.name.find("nonzero") == std::string::npos)
          s.worst = std::max(s.worst, c.max_rel_err);
        break;
      }
  s.ok = all && s.n > 0;
  return s;
}

int failures = 0;

void report(int num, const char* text, bool ok, double worst, double secs) {
  std::printf("%s criterion %d: %s (worst=%.3e, %.2fs)\n", ok ? "PASS" : "FAIL",
              num, text, worst, secs);
  if (!ok) ++failures;
}

std::string strip_timestamp(const std::string& rep) {
  std::string out;
  size_t pos = 0;
  while (pos < rep.size()) {
    size_t nl = rep.find('\n', pos);
    if (nl == std::string::npos) nl = rep.size();
    std::string line = rep.substr(pos, nl - pos);
    if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    pos = nl + 1;
  }
  return out;
}

}  // namespace

int main() {
  Clock::time_point total0 = Clock::now();
  GammaBasis gb = build_basis();

  // 1: finite algebra, exact identities
  {
    Clock::time_point t0 = Clock::now();
    auto c = suite_algebra(gb);
    double secs = seconds_since(t0);
    Slice s = slice(c, {"algebra_"});
    report(1, "gamma/E/basis16 algebra identities exact, under 1s",
           s.ok && secs < 1.0, s.worst, secs);
  }

  // 2, 3, 7: geometry over the full catalog, 32 points per chart
  std::vector<CheckResult> geo;
  double geo_secs = 0.0;
  {
    RunConfig cfg;
    cfg.seeds = {1};
    cfg.points = 32;
    Clock::time_point t0 = Clock::now();
    geo = suite_geometry(cfg, gb);
    geo_secs = seconds_since(t0);
    Slice s = slice(geo, {"geometry_metric_compatibility",
                          "geometry_eps_compatibility"});
    report(2, "nabla g = nabla eps = 0 on all 6 charts x 32 points, under 10s",
           s.ok && geo_secs < 10.0, s.worst, geo_secs);
    Slice s3 = slice(geo, {"geometry_christoffel_trace_lemma"});
    report(3, "Christoffel trace equals the tetrad log-derivative trace", s3.ok,
           s3.worst, geo_secs);
  }

  // 4, 5, 6: six-formulation equivalence, flat reduction, gauge covariance
  {
    RunConfig cfg;
    cfg.charts = {"minkowski_diag", "flat_spherical", "schwarzschild",
                  "frw_flat", "de_sitter_static"};
    cfg.seeds = {1, 2, 3};
    cfg.points = 32;
    Clock::time_point t0 = Clock::now();
    auto c = suite_equivalence(cfg, gb);
    double secs = seconds_since(t0);
    Slice s = slice(c, {"equiv_matrix_vs_tetrad", "equiv_two_spinor_blocks",
                        "equiv_tetrad_vs_tensor", "equiv_tensor_vs_forms",
                        "equiv_tensor_vs_pseudo"});
    report(4,
           "all six formulations agree on 4 curved charts, 3 seeds x 32 points, "
           "under 60s",
           s.ok && secs < 60.0, s.worst, secs);
    Slice s5 = slice(c, {"equiv_flat_reduction"});
    report(5, "curved operators reduce to the flat systems on minkowski_diag",
           s5.ok, s5.worst, secs);
    Slice s6 = slice(c, {"gauge_covariance_const_boost",
                         "gauge_covariance_local_rotation"});
    report(6, "gauge covariance under constant boost and local rotation", s6.ok,
           s6.worst, secs);
  }

  // 7: Levi-Civita dichotomy and reflection behavior (from the geometry run)
  {
    Slice s = slice(geo, {"geometry_bigE_equals_J_eps",
                          "geometry_p_reflection_pseudoscalars",
                          "geometry_linear_reflection_j"});
    report(7, "E = J(e) eps; P-reflection flips eps and J but not E", s.ok,
           s.worst, geo_secs);
  }

  // 8: sector suite, including a vacuum and a non-vacuum chart
  {
    RunConfig cfg;
    cfg.charts = {"minkowski_diag", "flat_spherical", "schwarzschild",
                  "frw_flat", "de_sitter_static"};
    cfg.seeds = {1};
    cfg.points = 6;
    Clock::time_point t0 = Clock::now();
    auto c = suite_sectors(cfg, gb);
    double secs = seconds_since(t0);
    Slice s = slice(c, {"sector_"});
    report(8,
           "sector block tables, reduced systems, and curvature identities "
           "(vacuum and non-vacuum)",
           s.ok, s.worst, secs);
  }

  // 9: left-sided vs two-sided Dirac operator discrepancy
  {
    RunConfig cfg;
    cfg.charts = {"minkowski_diag", "flat_spherical", "schwarzschild"};
    cfg.seeds = {1, 2};
    cfg.points = 12;
    Clock::time_point t0 = Clock::now();
    auto c = suite_compare_v(cfg, gb);
    double secs = seconds_since(t0);
    Slice s = slice(c, {"compare_v_"});
    report(9,
           "U/V discrepancy splits exactly, vanishes flat, is order-1e-4+ "
           "curved",
           s.ok, s.worst, secs);
  }

  // 10: determinism of the report and the total budget
  {
    RunConfig cfg;
    cfg.charts = {"schwarzschild"};
    cfg.seeds = {1};
    cfg.points = 4;
    auto run = [&]() {
      std::vector<CheckResult> c = suite_algebra(gb);
      for (auto& v : {suite_geometry(cfg, gb), suite_equivalence(cfg, gb),
                      suite_sectors(cfg, gb), suite_compare_v(cfg, gb)})
        c.insert(c.end(), v.begin(), v.end());
      return make_report(cfg, gb, "all", c);
    };
    bool same = strip_timestamp(run()) == strip_timestamp(run());
    double total = seconds_since(total0);
    report(10, "byte-identical reports modulo timestamp, full run under 5min",
           same && total < 300.0, same ? 0.0 : 1.0, total);
  }

  return failures == 0 ? 0 : 1;
}
