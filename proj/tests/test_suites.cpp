#include <stdexcept>
#include <string>

#include "doctest.h"
#include "dkl/suites.hpp"

using namespace dkl;

namespace {
const GammaBasis& basis() {
  static GammaBasis gb = build_basis();
  return gb;
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

TEST_CASE("run configuration defaults and validation") {
  RunConfig cfg;
  CHECK(cfg.chart_names().size() == 6);
  CHECK(cfg.seed_list() == std::vector<std::uint64_t>{1, 2, 3});
  CHECK_NOTHROW(cfg.validate());

  RunConfig bad = cfg;
  bad.points = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.mass = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.charts = {"no_such_chart"};
  CHECK_THROWS_AS(bad.validate(), std::runtime_error);
}

TEST_CASE("algebra suite passes and is chart-independent") {
  auto checks = suite_algebra(basis());
  CHECK(checks.size() > 5);
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    CHECK(c.chart.empty());
  }
}

TEST_CASE("small runs of every suite pass") {
  RunConfig cfg;
  cfg.charts = {"minkowski_diag", "schwarzschild"};
  cfg.seeds = {5};
  cfg.points = 3;
  const GammaBasis& gb = basis();
  for (const auto& checks :
       {suite_geometry(cfg, gb), suite_equivalence(cfg, gb),
        suite_sectors(cfg, gb), suite_compare_v(cfg, gb)}) {
    CHECK(!checks.empty());
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CAPTURE(c.chart);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("report is deterministic apart from the timestamp field") {
  RunConfig cfg;
  cfg.charts = {"frw_flat"};
  cfg.seeds = {2};
  cfg.points = 2;
  const GammaBasis& gb = basis();
  std::string a = make_report(cfg, gb, "equivalence", suite_equivalence(cfg, gb));
  std::string b = make_report(cfg, gb, "equivalence", suite_equivalence(cfg, gb));
  CHECK(strip_timestamp(a) == strip_timestamp(b));
  CHECK(a.find("\"timestamp\"") != std::string::npos);
  CHECK(a.find("\"gamma_basis_hash\"") != std::string::npos);
  CHECK(a.find("\"riemann_sign\"") != std::string::npos);
}

TEST_CASE("gamma basis hash pins the convention") {
  std::string h = gamma_basis_hash(basis());
  CHECK(h.size() == 16);
  CHECK(h == gamma_basis_hash(basis()));
  GammaBasis other = build_basis();
  other.gamma[1].m[0][0] += 1e-9;
  CHECK(h != gamma_basis_hash(other));
}
