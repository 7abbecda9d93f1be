#include <cmath>

#include "doctest.h"
#include "dkl/fermion_compare.hpp"
#include "util.hpp"

using namespace dkl;

namespace {
const GammaBasis& basis() {
  static GammaBasis gb = build_basis();
  return gb;
}
}  // namespace

TEST_CASE("projected V rows match the trace projection of the V residual") {
  const GammaBasis& gb = basis();
  for (const char* name : {"minkowski_diag", "flat_spherical", "schwarzschild",
                           "frw_flat", "de_sitter_static"}) {
    TetradChart chart = find_chart(name);
    CAPTURE(name);
    MultipletField F = random_multiplet_field(512, 2, 1.0, 1.2);
    for (const Point& p : sample_points(chart, 23, 5)) {
      ResidualSet direct = v_projected_rows(chart, F, p, gb);
      ResidualSet proj = project_residual(gb, v_residual_matrix(chart, F, p, gb));
      CHECK(residual_set_dist(direct, proj) < 1e-9);
    }
  }
}

TEST_CASE("U and V operators coincide exactly on the trivial tetrad") {
  const GammaBasis& gb = basis();
  TetradChart mink = find_chart("minkowski_diag");
  MultipletField F = random_multiplet_field(600, 2, 1.0, 1.0);
  for (const Point& p : sample_points(mink, 31, 5)) {
    UVDiscrepancy d = u_v_discrepancy(mink, F, p, gb);
    CHECK(d.magnitude < 1e-12);
    CHECK(d.prediction_gap < 1e-12);
  }
}

TEST_CASE("U and V operators split by the right-connection term when curved") {
  const GammaBasis& gb = basis();
  for (const char* name : {"schwarzschild", "flat_spherical"}) {
    TetradChart chart = find_chart(name);
    CAPTURE(name);
    MultipletField F = random_multiplet_field(601, 2, 1.0, 1.0);
    bool somewhere_large = false;
    for (const Point& p : sample_points(chart, 37, 6)) {
      UVDiscrepancy d = u_v_discrepancy(chart, F, p, gb);
      // the split is an exact algebraic identity at every point
      CHECK(d.prediction_gap < 1e-10);
      somewhere_large = somewhere_large || d.magnitude > 1e-4;
    }
    // the two interpretations genuinely differ on a curved tetrad
    CHECK(somewhere_large);
  }
}

TEST_CASE("V operator acts on Dirac columns independently") {
  const GammaBasis& gb = basis();
  TetradChart chart = find_chart("schwarzschild");
  MultipletField F = random_multiplet_field(700, 2, 1.0, 1.0);
  for (const Point& p : sample_points(chart, 43, 3)) {
    GeometryAt g = geometry_at(chart, p, gb);
    MatrixField U = matrix_field_at(gb, F, p);
    for (int col = 0; col < 4; ++col) {
      // keep a single column of the matrix field
      MatrixField one;
      for (int i = 0; i < 4; ++i) {
        one.val.m[i][col] = U.val.m[i][col];
        for (int mu = 0; mu < 4; ++mu) one.d1[mu].m[i][col] = U.d1[mu].m[i][col];
      }
      MatrixC4 R = v_residual_matrix_core(g, gb, one, F.mass);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (j != col) CHECK(std::abs(R.m[i][j]) == 0.0);
    }
    // and the column residuals add up to the full V residual
    MatrixC4 total = v_residual_matrix_core(g, gb, U, F.mass);
    MatrixC4 sum;
    for (int col = 0; col < 4; ++col) {
      MatrixField one;
      for (int i = 0; i < 4; ++i) {
        one.val.m[i][col] = U.val.m[i][col];
        for (int mu = 0; mu < 4; ++mu) one.d1[mu].m[i][col] = U.d1[mu].m[i][col];
      }
      sum = sum + v_residual_matrix_core(g, gb, one, F.mass);
    }
    CHECK(norm_inf(sum - total) < 1e-12);
  }
}
