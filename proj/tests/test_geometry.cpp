#include <cmath>
#include <vector>

#include "doctest.h"
#include "dkl/geometry.hpp"
#include "util.hpp"

using namespace dkl;
using dkl_test::rel_err;

namespace {

const GammaBasis& basis() {
  static GammaBasis gb = build_basis();
  return gb;
}

// rank-2 lower tensor jet assembled from GeometryAt's cached metric data
void metric_jet(const GeometryAt& g, std::vector<cplx>& val, std::vector<cplx>& d1) {
  val.assign(16, 0.0);
  d1.assign(64, 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      val[a * 4 + b] = g.g_down[a][b];
      for (int mu = 0; mu < 4; ++mu) d1[mu * 16 + a * 4 + b] = g.dg_down[mu][a][b];
    }
}

// eps_{alpha beta rho sigma}(x) = e(x) * symbol, as a rank-4 jet
void eps_low_jet(const GeometryAt& g, std::vector<cplx>& val, std::vector<cplx>& d1) {
  val.assign(256, 0.0);
  d1.assign(1024, 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          int s = epsilon_symbol(a, b, c, d);
          if (s == 0) continue;
          int I = ((a * 4 + b) * 4 + c) * 4 + d;
          val[I] = g.det_e * s;
          for (int mu = 0; mu < 4; ++mu) d1[mu * 256 + I] = g.ddet_e[mu] * s;
        }
}

void bigE_jet(const GeometryAt& g, std::vector<cplx>& val, std::vector<cplx>& d1) {
  eps_low_jet(g, val, d1);
  for (auto& v : val) v = g.jfac * v;
  for (auto& v : d1) v = g.jfac * v;
}

}  // namespace

TEST_CASE("catalog contents") {
  auto charts = catalog();
  CHECK(charts.size() >= 6);
  CHECK_NOTHROW(find_chart("minkowski_diag"));
  CHECK_NOTHROW(find_chart("minkowski_boosted"));
  CHECK_NOTHROW(find_chart("flat_spherical"));
  CHECK_NOTHROW(find_chart("schwarzschild"));
  CHECK_NOTHROW(find_chart("frw_flat"));
  CHECK_NOTHROW(find_chart("de_sitter_static"));
  CHECK_THROWS_WITH(find_chart("kerr"), "unknown chart: kerr");
}

TEST_CASE("minkowski_diag geometry is trivial") {
  TetradChart c = find_chart("minkowski_diag");
  Point p{{0.1, -0.5, 0.7, 1.2}};
  GeometryAt g = geometry_at(c, p, basis());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(g.e_up[a][b] == (a == b ? 1.0 : 0.0));
      for (int mu = 0; mu < 4; ++mu) {
        CHECK(g.christoffel[mu][a][b] == 0.0);
        CHECK(std::abs(g.gamma_ricci[mu][a][b]) == 0.0);
      }
    }
  for (int al = 0; al < 4; ++al) CHECK(norm_inf(g.spin_gamma[al]) == 0.0);
  CHECK(g.det_e == -1.0);
  CHECK(g.jfac == 1.0);
  // eps^{0123}(x) = -1/e = +1; eps_{0123}(x) = e = -1; E_{0123} = J*eps = -1
  CHECK(g.eps_x[0][1][2][3] == 1.0);
  CHECK(g.eps_low_x[0][1][2][3] == -1.0);
  CHECK(g.bigE_x[0][1][2][3] == -1.0);
}

TEST_CASE("schwarzschild tetrad entry") {
  TetradChart c = find_chart("schwarzschild");
  Point p{{0.0, 4.0, 1.5707963267948966, 1.0}};
  GeometryAt g = geometry_at(c, p, basis());
  CHECK(rel_err(g.e_up[0][0], std::sqrt(2.0)) < 1e-14);  // (1 - 2/4)^{-1/2}
}

TEST_CASE("parameter overrides rebuild the chart") {
  std::map<std::string, double> ov{{"M", 2.0}};
  TetradChart c = find_chart("schwarzschild", &ov);
  CHECK(c.params.at("M") == 2.0);
  CHECK(c.lo[1] == 6.0);
  Point p{{0.0, 8.0, 1.5, 1.0}};
  GeometryAt g = geometry_at(c, p, basis());
  CHECK(rel_err(g.e_up[0][0], 1.0 / std::sqrt(0.5)) < 1e-14);
}

TEST_CASE("domain violations are hard errors") {
  TetradChart c = find_chart("schwarzschild");
  Point inside{{0.0, 5.0, 1.5, 1.0}};
  Point outside{{0.0, 2.5, 1.5, 1.0}};  // inside the horizon margin
  CHECK_NOTHROW(geometry_at(c, inside, basis()));
  CHECK_THROWS(geometry_at(c, outside, basis()));
}

TEST_CASE("Christoffel trace lemma on all charts") {
  // Gamma^alpha_{mu alpha} = e^alpha_{(i)} d_mu e^{(i)}_alpha
  for (const auto& c : catalog()) {
    for (const Point& p : sample_points(c, 17, 32)) {
      GeometryAt g = geometry_at(c, p, basis());
      for (int mu = 0; mu < 4; ++mu) {
        double lhs = 0.0, rhs = 0.0;
        for (int al = 0; al < 4; ++al) lhs += g.christoffel[al][mu][al];
        for (int i = 0; i < 4; ++i)
          for (int al = 0; al < 4; ++al) rhs += g.e_up[i][al] * g.de_down[mu][i][al];
        CHECK(rel_err(lhs, rhs) < 1e-9);
      }
    }
  }
}

TEST_CASE("metric compatibility and Levi-Civita parallelism") {
  for (const auto& c : catalog()) {
    for (const Point& p : sample_points(c, 5, 32)) {
      GeometryAt g = geometry_at(c, p, basis());
      std::vector<cplx> val, d1;

      metric_jet(g, val, d1);
      for (cplx v : covariant_derivative(g, 2, val, d1))
        CHECK(std::abs(v) < 1e-9);

      eps_low_jet(g, val, d1);
      for (cplx v : covariant_derivative(g, 4, val, d1))
        CHECK(std::abs(v) < 1e-9);

      bigE_jet(g, val, d1);
      for (cplx v : covariant_derivative(g, 4, val, d1))
        CHECK(std::abs(v) < 1e-9);
    }
  }
}

TEST_CASE("covariant derivative of a scalar is the gradient") {
  TetradChart c = find_chart("frw_flat");
  Point p = sample_points(c, 3, 1)[0];
  GeometryAt g = geometry_at(c, p, basis());
  FieldExpr f = random_polynomial(8, 2, 1.0);
  Jet2 j = f.eval(p);
  std::vector<cplx> val{j.val}, d1{j.d1[0], j.d1[1], j.d1[2], j.d1[3]};
  auto grad = covariant_derivative(g, 0, val, d1);
  for (int mu = 0; mu < 4; ++mu) CHECK(grad[mu] == j.d1[mu]);
}

TEST_CASE("flat charts are flat, schwarzschild is vacuum") {
  double R[4][4][4][4], ric[4][4];
  for (const char* name : {"minkowski_diag", "minkowski_boosted", "flat_spherical"}) {
    TetradChart c = find_chart(name);
    for (const Point& p : sample_points(c, 9, 8)) {
      riemann_ricci(c, p, basis(), R, ric);
      double mx = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int d = 0; d < 4; ++d)
            for (int e = 0; e < 4; ++e) mx = std::max(mx, std::abs(R[a][b][d][e]));
      CHECK(mx < 1e-8);
    }
  }
  TetradChart sch = find_chart("schwarzschild");
  double mx_riemann = 0.0;
  for (const Point& p : sample_points(sch, 9, 8)) {
    riemann_ricci(sch, p, basis(), R, ric);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CHECK(std::abs(ric[a][b]) < 1e-7);
        for (int d = 0; d < 4; ++d)
          for (int e = 0; e < 4; ++e)
            mx_riemann = std::max(mx_riemann, std::abs(R[a][b][d][e]));
      }
  }
  CHECK(mx_riemann > 1e-3);  // curvature genuinely nonzero
}

TEST_CASE("Riemann symmetries and Ricci symmetry") {
  for (const char* name : {"schwarzschild", "frw_flat", "de_sitter_static"}) {
    TetradChart c = find_chart(name);
    GeometryAt g = geometry_at(c, sample_points(c, 21, 1)[0], basis());
    for (int n = 0; n < 4; ++n)
      for (int s = 0; s < 4; ++s) {
        CHECK(std::abs(g.ricci[n][s] - g.ricci[s][n]) < 1e-9);
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            CHECK(std::abs(g.riemann[n][s][a][b] + g.riemann[n][s][b][a]) < 1e-9);
      }
  }
}

TEST_CASE("commutator of covariant derivatives pins the Riemann sign") {
  // (nabla_a nabla_b - nabla_b nabla_a) W_s = W_n R^n_{s b a}
  for (const char* name : {"schwarzschild", "frw_flat"}) {
    TetradChart c = find_chart(name);
    FieldExpr W[4];
    for (int i = 0; i < 4; ++i) W[i] = random_polynomial(40 + i, 2, 1.0);
    for (const Point& p : sample_points(c, 13, 8)) {
      GeometryAt g = geometry_at(c, p, basis());
      std::vector<cplx> val(4), d1(16), d2(64);
      for (int s = 0; s < 4; ++s) {
        Jet2 j = W[s].eval(p);
        val[s] = j.val;
        for (int mu = 0; mu < 4; ++mu) {
          d1[mu * 4 + s] = j.d1[mu];
          for (int nu = 0; nu < 4; ++nu) d2[(mu * 4 + nu) * 4 + s] = j.d2[mu][nu];
        }
      }
      auto dd = second_covariant_derivative(g, 1, val, d1, d2);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int s = 0; s < 4; ++s) {
            cplx lhs = dd[(a * 4 + b) * 4 + s] - dd[(b * 4 + a) * 4 + s];
            cplx rhs = 0.0;
            for (int n = 0; n < 4; ++n) rhs += val[n] * g.riemann[n][s][b][a];
            CHECK(rel_err(lhs, rhs) < 1e-7);
          }
    }
  }
}

TEST_CASE("tetrad determinant laws under frame rotations") {
  TetradChart c = find_chart("minkowski_diag");
  Point p{};
  GeometryAt g0 = geometry_at(c, p, basis());

  // improper reflection flips e(x), J(e), eps(x) but leaves E fixed
  TetradChart cp = p_reflect_tetrad(c);
  GeometryAt gp = geometry_at(cp, p, basis());
  CHECK(gp.det_e == -g0.det_e);
  CHECK(gp.jfac == -g0.jfac);
  CHECK(gp.eps_low_x[0][1][2][3] == -g0.eps_low_x[0][1][2][3]);
  CHECK(rel_err(gp.bigE_x[0][1][2][3], g0.bigE_x[0][1][2][3]) < 1e-14);

  // metric invariance under the rotation
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(rel_err(gp.g_down[a][b], g0.g_down[a][b]) < 1e-10);

  // proper constant boost leaves eps(x) alone
  LorentzFieldExpr L;
  double ch = std::cosh(0.7), sh = std::sinh(0.7);
  L.L[0][0] = fe_const(ch);
  L.L[0][1] = fe_const(sh);
  L.L[1][0] = fe_const(sh);
  L.L[1][1] = fe_const(ch);
  L.L[2][2] = fe_const(1.0);
  L.L[3][3] = fe_const(1.0);
  TetradChart cb = apply_local_lorentz(c, L);
  GeometryAt gb2 = geometry_at(cb, p, basis());
  CHECK(rel_err(gb2.det_e, g0.det_e) < 1e-12);
  CHECK(gb2.jfac == g0.jfac);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int d = 0; d < 4; ++d)
        for (int e = 0; e < 4; ++e)
          CHECK(rel_err(gb2.eps_x[a][b][d][e], g0.eps_x[a][b][d][e]) < 1e-12);
}

TEST_CASE("E = J(e) eps(x) and the raising formula on every chart") {
  for (const auto& c : catalog()) {
    for (const Point& p : sample_points(c, 2, 8)) {
      GeometryAt g = geometry_at(c, p, basis());
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int d = 0; d < 4; ++d)
            for (int e = 0; e < 4; ++e) {
              CHECK(rel_err(g.bigE_x[a][b][d][e],
                            g.jfac * g.eps_low_x[a][b][d][e]) < 1e-12);
              // eps^{abde}(x) from raising the lowered components
              double raised = 0.0;
              for (int a2 = 0; a2 < 4; ++a2)
                for (int b2 = 0; b2 < 4; ++b2)
                  for (int d2 = 0; d2 < 4; ++d2)
                    for (int e2 = 0; e2 < 4; ++e2)
                      raised += g.g_up[a][a2] * g.g_up[b][b2] * g.g_up[d][d2] *
                                g.g_up[e][e2] * g.eps_low_x[a2][b2][d2][e2];
              CHECK(rel_err(raised, g.eps_x[a][b][d][e]) < 1e-10);
            }
    }
  }
}

TEST_CASE("non-Lorentz frame rotations are rejected") {
  TetradChart c = find_chart("minkowski_diag");
  LorentzFieldExpr L;
  for (int i = 0; i < 4; ++i) L.L[i][i] = fe_const(2.0);
  CHECK_THROWS(apply_local_lorentz(c, L));
}

TEST_CASE("linear coordinate maps: pseudoscalar laws for e and J") {
  const GammaBasis& gb = basis();
  TetradChart c = find_chart("flat_spherical");

  double idm[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(linear_coordinate_check(c, idm, gb).pass);

  double refl[4][4] = {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(linear_coordinate_check(c, refl, gb).pass);

  double scale[4][4] = {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}};
  CHECK(linear_coordinate_check(find_chart("minkowski_boosted"), scale, gb).pass);

  double sing[4][4] = {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK_THROWS(linear_coordinate_check(c, sing, gb));
}

TEST_CASE("tetrad jets agree with the finite-difference oracle") {
  for (const char* name : {"schwarzschild", "de_sitter_static", "frw_flat"}) {
    TetradChart c = find_chart(name);
    for (const Point& p : sample_points(c, 4, 4)) {
      for (int a = 0; a < 4; ++a)
        for (int al = 0; al < 4; ++al) {
          if (c.tetrad[a][al].is_zero()) continue;
          Jet2 j = c.tetrad[a][al].eval(p);
          Jet2 fd = finite_difference_oracle(c.tetrad[a][al], p, 1e-5);
          for (int mu = 0; mu < 4; ++mu) CHECK(rel_err(j.d1[mu], fd.d1[mu]) < 1e-5);
        }
    }
  }
}

TEST_CASE("sampling is deterministic and stays in the domain") {
  TetradChart c = find_chart("de_sitter_static");
  auto a = sample_points(c, 77, 32);
  auto b = sample_points(c, 77, 32);
  REQUIRE(a.size() == 32);
  for (int k = 0; k < 32; ++k)
    for (int i = 0; i < 4; ++i) {
      CHECK(a[k].x[i] == b[k].x[i]);
      CHECK(a[k].x[i] > c.lo[i]);
      CHECK(a[k].x[i] < c.hi[i]);
    }
}
