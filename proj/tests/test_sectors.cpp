#include <cmath>

#include "doctest.h"
#include "dkl/sectors.hpp"
#include "util.hpp"

using namespace dkl;

namespace {

const GammaBasis& basis() {
  static GammaBasis gb = build_basis();
  return gb;
}

const SectorTag kAllTags[4] = {SectorTag::S0, SectorTag::S0tilde, SectorTag::S1,
                               SectorTag::S1tilde};

}  // namespace

TEST_CASE("apply_sector keeps exactly the sector components") {
  MultipletField F = random_multiplet_field(5, 2, 1.0, 1.0);
  MultipletField s0 = apply_sector(F, SectorTag::S0);
  CHECK(!s0.s.is_zero());
  CHECK(s0.ps.is_zero());
  for (int i = 0; i < 4; ++i) {
    CHECK(!s0.v[i].is_zero());
    CHECK(s0.pv[i].is_zero());
  }
  for (int i = 0; i < 6; ++i) CHECK(s0.t_pairs[i].is_zero());

  MultipletField s1t = apply_sector(F, SectorTag::S1tilde);
  CHECK(s1t.s.is_zero());
  for (int i = 0; i < 4; ++i) {
    CHECK(s1t.v[i].is_zero());
    CHECK(!s1t.pv[i].is_zero());
  }
  for (int i = 0; i < 6; ++i) CHECK(!s1t.t_pairs[i].is_zero());

  // idempotent
  for (SectorTag tag : kAllTags) {
    MultipletField once = apply_sector(F, tag);
    MultipletField twice = apply_sector(once, tag);
    Point p{{0.3, -0.2, 0.5, 0.1}};
    CHECK(once.s.eval(p).val == twice.s.eval(p).val);
    CHECK(once.t_pairs[3].eval(p).val == twice.t_pairs[3].eval(p).val);
  }
}

TEST_CASE("block symmetry tables hold exactly on constrained fields") {
  const GammaBasis& gb = basis();
  MultipletField F = random_multiplet_field(88, 2, 1.0, 1.0);
  Point pts[3] = {{{0.1, 0.7, -0.4, 0.9}},
                  {{-0.8, 0.2, 0.6, -0.3}},
                  {{0.0, 0.0, 0.0, 0.0}}};
  for (SectorTag tag : kAllTags) {
    CAPTURE(sector_name(tag));
    MultipletField Fc = apply_sector(F, tag);
    for (const Point& p : pts) {
      MatrixC4 U = matrix_field_at(gb, Fc, p).val;
      CHECK(sector_block_violation(gb, U, tag) < 1e-12);
      // negative control: the generic field violates the table
      MatrixC4 Ug = matrix_field_at(gb, F, p).val;
      CHECK(sector_block_violation(gb, Ug, tag) > 1e-3);
    }
  }
}

TEST_CASE("reduced systems are the constrained rows of the full system") {
  const GammaBasis& gb = basis();
  for (const char* name : {"minkowski_diag", "schwarzschild", "frw_flat"}) {
    TetradChart chart = find_chart(name);
    CAPTURE(name);
    MultipletField F = random_multiplet_field(303, 2, 1.0, 0.9);
    for (SectorTag tag : kAllTags) {
      CAPTURE(sector_name(tag));
      MultipletField Fc = apply_sector(F, tag);
      for (const Point& p : sample_points(chart, 19, 4)) {
        ResidualSet red = reduced_residual(chart, Fc, tag, p, gb);
        ResidualSet full = residual_tensor(chart, Fc, p, gb);
        CHECK(residual_set_dist(red, full) < 1e-10);
        // rows of the full system absent from the reduced one vanish
        for (const auto& e : full.entries) {
          bool kept = false;
          for (const auto& r : red.entries) kept = kept || r.first == e.first;
          if (kept) continue;
          for (cplx c : e.second) CHECK(std::abs(c) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("reduced_residual rejects unconstrained fields") {
  const GammaBasis& gb = basis();
  TetradChart chart = find_chart("minkowski_diag");
  MultipletField F = random_multiplet_field(1, 2, 1.0, 1.0);
  Point p{{0.0, 0.0, 0.0, 0.0}};
  for (SectorTag tag : kAllTags)
    CHECK_THROWS(reduced_residual(chart, F, tag, p, gb));
}

TEST_CASE("curvature identities behind the trivialized rows") {
  const GammaBasis& gb = basis();
  for (const char* name : {"minkowski_diag", "flat_spherical", "schwarzschild",
                           "frw_flat", "de_sitter_static"}) {
    TetradChart chart = find_chart(name);
    CAPTURE(name);
    for (SectorTag tag : kAllTags) {
      CAPTURE(sector_name(tag));
      for (const Point& p : sample_points(chart, 41, 3)) {
        auto reports = sector_identity_checks(chart, tag, 97, p, gb);
        CHECK(!reports.empty());
        for (const auto& r : reports) {
          CAPTURE(r.name);
          CAPTURE(r.direct_vs_curvature);
          CAPTURE(r.magnitude);
          CHECK(r.pass);
        }
      }
    }
  }
}

TEST_CASE("vector-tensor sector blocks live in the symmetric 3+3 space") {
  const GammaBasis& gb = basis();
  MultipletField F = random_multiplet_field(640, 2, 1.0, 1.0);
  MultipletField Fc = apply_sector(F, SectorTag::S1);
  Point pts[2] = {{{0.4, -0.1, 0.8, 0.2}}, {{-0.5, 0.3, -0.7, 0.6}}};
  for (const Point& p : pts) {
    MatrixC4 U = matrix_field_at(gb, Fc, p).val;
    CHECK(s1_rank_structure_violation(gb, U) < 1e-12);
    MatrixC4 Ug = matrix_field_at(gb, F, p).val;
    CHECK(s1_rank_structure_violation(gb, Ug) > 1e-3);
  }
}
