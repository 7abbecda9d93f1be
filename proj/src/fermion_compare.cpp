#include "dkl/fermion_compare.hpp"

namespace dkl {

MatrixC4 v_residual_matrix_core(const GeometryAt& g, const GammaBasis& gb,
                                const MatrixField& U, double mass) {
  MatrixC4 R = cplx(-mass) * U.val;
  for (int al = 0; al < 4; ++al) {
    MatrixC4 gamma_x;
    for (int c = 0; c < 4; ++c) gamma_x = gamma_x + cplx(g.e_up[c][al]) * gb.gamma[c];
    R = R + I_UNIT * (gamma_x * (U.d1[al] + g.spin_gamma[al] * U.val));
  }
  return R;
}

MatrixC4 v_residual_matrix(const TetradChart& chart, const MultipletField& F,
                           const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  return v_residual_matrix_core(g, gb, matrix_field_at(gb, F, p), F.mass);
}

ResidualSet v_projected_rows(const TetradChart& chart, const MultipletField& F,
                             const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  double G[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) G[a][b][c] = -g.gamma_ricci[a][b][c];
  double Gc[4];
  for (int b = 0; b < 4; ++b) {
    Gc[b] = 0.0;
    for (int a = 0; a < 4; ++a) Gc[b] += eta[a] * G[a][b][a];
  }

  Jet2 s = F.s.eval(p), ps = F.ps.eval(p);
  Jet2 v[4], pv[4], t[4][4];
  for (int i = 0; i < 4; ++i) {
    v[i] = F.v[i].eval(p);
    pv[i] = F.pv[i].eval(p);
    for (int k = 0; k < 4; ++k) t[i][k] = Jet2{};
  }
  for (int q = 0; q < 6; ++q) {
    Jet2 x = F.t_pairs[q].eval(p);
    t[kTensorPairs[q][0]][kTensorPairs[q][1]] = x;
    t[kTensorPairs[q][1]][kTensorPairs[q][0]] = -x;
  }
  auto D = [&](int c, const Jet2& x) {
    cplx r = 0.0;
    for (int al = 0; al < 4; ++al) r += g.e_up[c][al] * x.d1[al];
    return r;
  };

  ResidualSet rs;
  rs.name = "fermion_v";
  rs.point = p;
  double m = F.mass;

  // scalar and pseudoscalar rows: half-strength connection trace plus the
  // eps-contracted rotation coefficients mixing in the opposite-parity vector
  cplx r_s = m * s.val, r_ps = m * ps.val;
  for (int l = 0; l < 4; ++l) {
    r_s += eta[l] * D(l, v[l]) + 0.5 * eta[l] * Gc[l] * v[l].val;
    r_ps += eta[l] * D(l, pv[l]) + 0.5 * eta[l] * Gc[l] * pv[l].val;
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int l = 0; l < 4; ++l) {
          int e = epsilon_symbol(a, b, c, l);
          if (e == 0) continue;
          r_s += 0.25 * G[a][b][c] * double(e) * pv[l].val;
          r_ps -= 0.25 * G[a][b][c] * double(e) * v[l].val;
        }
  rs.add("scalar", {r_s});
  rs.add("pseudoscalar", {r_ps});

  std::vector<cplx> vec(4);
  for (int k = 0; k < 4; ++k) {
    cplx r = D(k, s) - m * v[k].val + 0.5 * Gc[k] * s.val;
    for (int c = 0; c < 4; ++c) r += eta[c] * D(c, t[k][c]);
    for (int m2 = 0; m2 < 4; ++m2)
      for (int n2 = 0; n2 < 4; ++n2) {
        double w = eta[m2] * eta[n2];
        r += (0.5 * G[k][m2][n2] + 0.25 * G[m2][n2][k]) * w * t[m2][n2].val;
      }
    for (int l = 0; l < 4; ++l) r += 0.5 * eta[l] * Gc[l] * t[k][l].val;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          int e = epsilon_symbol(a, b, c, k);
          if (e == 0) continue;
          r -= 0.25 * G[a][b][c] * double(e) * eta[k] * ps.val;
        }
    vec[k] = r;
  }
  rs.add("vector", vec);
  return rs;
}

UVDiscrepancy u_v_discrepancy(const TetradChart& chart, const MultipletField& F,
                              const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  MatrixField U = matrix_field_at(gb, F, p);
  UVDiscrepancy d;
  d.diff = residual_matrix_core(g, gb, U, F.mass) -
           v_residual_matrix_core(g, gb, U, F.mass);
  MatrixC4 pred;
  for (int al = 0; al < 4; ++al) {
    MatrixC4 gamma_x;
    for (int c = 0; c < 4; ++c) gamma_x = gamma_x + cplx(g.e_up[c][al]) * gb.gamma[c];
    pred = pred + I_UNIT * (gamma_x * (U.val * transpose(g.spin_gamma[al])));
  }
  d.predicted = pred;
  d.magnitude = norm_inf(d.diff);
  d.prediction_gap = norm_inf(d.diff - pred);
  return d;
}

}  // namespace dkl
