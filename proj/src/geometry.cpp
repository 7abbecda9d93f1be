#include "dkl/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace dkl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Jordan inverse of a 4x4 Jet2 matrix (pivot on |value|); derivatives
// of the inverse come out of the same elimination.
void jet_inverse4(const Jet2 a[4][4], Jet2 out[4][4]) {
  Jet2 w[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      w[i][j] = a[i][j];
      w[i][4 + j] = jet_const(i == j ? 1.0 : 0.0);
    }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(w[r][c].val) > std::abs(w[piv][c].val)) piv = r;
    if (std::abs(w[piv][c].val) < 1e-12)
      throw std::runtime_error("singular tetrad");
    if (piv != c)
      for (int j = 0; j < 8; ++j) std::swap(w[piv][j], w[c][j]);
    Jet2 inv = jet_reciprocal(w[c][c]);
    for (int j = 0; j < 8; ++j) w[c][j] = w[c][j] * inv;
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      Jet2 f = w[r][c];
      if (f.val == cplx(0.0)) {
        bool flat = true;
        for (int i = 0; i < 4 && flat; ++i) {
          if (f.d1[i] != cplx(0.0)) flat = false;
          for (int j = 0; j < 4 && flat; ++j)
            if (f.d2[i][j] != cplx(0.0)) flat = false;
        }
        if (flat) continue;
      }
      for (int j = 0; j < 8; ++j) w[r][j] = w[r][j] - f * w[c][j];
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = w[i][4 + j];
}

// Determinant of a 4x4 Jet2 matrix via the permutation expansion (24 terms).
Jet2 jet_det4(const Jet2 a[4][4]) {
  Jet2 det;
  int idx[4] = {0, 1, 2, 3};
  // iterate all permutations explicitly
  for (int p0 = 0; p0 < 4; ++p0)
    for (int p1 = 0; p1 < 4; ++p1)
      for (int p2 = 0; p2 < 4; ++p2)
        for (int p3 = 0; p3 < 4; ++p3) {
          int s = epsilon_symbol(p0, p1, p2, p3);
          if (s == 0) continue;
          (void)idx;
          Jet2 term = a[0][p0] * a[1][p1] * a[2][p2] * a[3][p3];
          det = det + cplx(double(s)) * term;
        }
  return det;
}

double det4_real(const double a[4][4]) {
  double det = 0.0;
  for (int p0 = 0; p0 < 4; ++p0)
    for (int p1 = 0; p1 < 4; ++p1)
      for (int p2 = 0; p2 < 4; ++p2)
        for (int p3 = 0; p3 < 4; ++p3) {
          int s = epsilon_symbol(p0, p1, p2, p3);
          if (s == 0) continue;
          det += s * a[0][p0] * a[1][p1] * a[2][p2] * a[3][p3];
        }
  return det;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::runtime_error(std::string("geometry invariant failed: ") + what);
}

}  // namespace

// ---- chart catalog ----

namespace {
// parameter lookup with optional caller overrides
double par(const std::map<std::string, double>* ov, const std::string& key,
           double fallback) {
  if (ov) {
    auto it = ov->find(key);
    if (it != ov->end()) return it->second;
  }
  return fallback;
}

std::vector<TetradChart> make_catalog(const std::map<std::string, double>* ov) {
  std::vector<TetradChart> out;
  FieldExpr one = fe_const(1.0);
  FieldExpr t = fe_coord(0), r = fe_coord(1), th = fe_coord(2);

  {
    TetradChart c;
    c.name = "minkowski_diag";
    for (int i = 0; i < 4; ++i) {
      c.lo[i] = -2.0;
      c.hi[i] = 2.0;
      c.tetrad[i][i] = one;
    }
    out.push_back(c);
  }
  {
    // constant boost of the diagonal tetrad along x, rapidity chi
    TetradChart c;
    c.name = "minkowski_boosted";
    double chi = par(ov, "chi", 0.5);
    c.params["chi"] = chi;
    double ch = std::cosh(chi), sh = std::sinh(chi);
    for (int i = 0; i < 4; ++i) {
      c.lo[i] = -2.0;
      c.hi[i] = 2.0;
    }
    c.tetrad[0][0] = fe_const(ch);
    c.tetrad[0][1] = fe_const(sh);
    c.tetrad[1][0] = fe_const(sh);
    c.tetrad[1][1] = fe_const(ch);
    c.tetrad[2][2] = one;
    c.tetrad[3][3] = one;
    out.push_back(c);
  }
  {
    // flat metric in spherical coordinates (t, r, theta, phi)
    TetradChart c;
    c.name = "flat_spherical";
    c.lo[0] = -1.0; c.hi[0] = 1.0;
    c.lo[1] = 1.0;  c.hi[1] = 3.0;
    c.lo[2] = 0.4;  c.hi[2] = kPi - 0.4;
    c.lo[3] = 0.1;  c.hi[3] = 3.0;
    c.tetrad[0][0] = one;
    c.tetrad[1][1] = one;
    c.tetrad[2][2] = fe_recip(r);
    c.tetrad[3][3] = fe_recip(r * fe_sin(th));
    out.push_back(c);
  }
  {
    // Schwarzschild, diagonal tetrad, f = 1 - 2M/r
    TetradChart c;
    c.name = "schwarzschild";
    double M = par(ov, "M", 1.0);
    c.params["M"] = M;
    c.lo[0] = -1.0;    c.hi[0] = 1.0;
    c.lo[1] = 3.0 * M; c.hi[1] = 10.0 * M;
    c.lo[2] = 0.3;     c.hi[2] = kPi - 0.3;
    c.lo[3] = 0.1;     c.hi[3] = 3.0;
    FieldExpr f = one - cplx(2.0 * M) * fe_recip(r);
    c.tetrad[0][0] = fe_recip(fe_sqrt(f));
    c.tetrad[1][1] = fe_sqrt(f);
    c.tetrad[2][2] = fe_recip(r);
    c.tetrad[3][3] = fe_recip(r * fe_sin(th));
    out.push_back(c);
  }
  {
    // spatially flat FRW with a(t) = a0 exp(H t)
    TetradChart c;
    c.name = "frw_flat";
    double a0 = par(ov, "a0", 1.0), H = par(ov, "H", 0.2);
    c.params["a0"] = a0;
    c.params["H"] = H;
    for (int i = 0; i < 4; ++i) {
      c.lo[i] = -1.0;
      c.hi[i] = 1.0;
    }
    FieldExpr ainv = cplx(1.0 / a0) * fe_exp(cplx(-H) * t);
    c.tetrad[0][0] = one;
    c.tetrad[1][1] = ainv;
    c.tetrad[2][2] = ainv;
    c.tetrad[3][3] = ainv;
    out.push_back(c);
  }
  {
    // static de Sitter, f = 1 - H^2 r^2
    TetradChart c;
    c.name = "de_sitter_static";
    double H = par(ov, "H", 0.3);
    c.params["H"] = H;
    c.lo[0] = -1.0; c.hi[0] = 1.0;
    c.lo[1] = 0.2;  c.hi[1] = 2.0;
    c.lo[2] = 0.3;  c.hi[2] = kPi - 0.3;
    c.lo[3] = 0.1;  c.hi[3] = 3.0;
    FieldExpr f = one - cplx(H * H) * r * r;
    c.tetrad[0][0] = fe_recip(fe_sqrt(f));
    c.tetrad[1][1] = fe_sqrt(f);
    c.tetrad[2][2] = fe_recip(r);
    c.tetrad[3][3] = fe_recip(r * fe_sin(th));
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::vector<TetradChart> catalog() { return make_catalog(nullptr); }

TetradChart find_chart(const std::string& name,
                       const std::map<std::string, double>* param_overrides) {
  for (auto& c : make_catalog(param_overrides))
    if (c.name == name) return c;
  throw std::runtime_error("unknown chart: " + name);
}

bool in_domain(const TetradChart& chart, const Point& p) {
  for (int i = 0; i < 4; ++i)
    if (p.x[i] < chart.lo[i] || p.x[i] > chart.hi[i]) return false;
  return true;
}

// ---- geometry at a point ----

GeometryAt geometry_at(const TetradChart& chart, const Point& p,
                       const GammaBasis& gb) {
  if (!in_domain(chart, p))
    throw std::runtime_error("point outside chart domain: " + chart.name);

  GeometryAt g;
  g.p = p;

  Jet2 eu[4][4];  // e^alpha_{(a)}
  for (int a = 0; a < 4; ++a)
    for (int al = 0; al < 4; ++al) eu[a][al] = chart.tetrad[a][al].eval(p);

  // e^{(a)}_alpha: inverse of the tetrad matrix (rows a, cols alpha)
  Jet2 inv[4][4];
  jet_inverse4(eu, inv);
  Jet2 ed[4][4];
  for (int a = 0; a < 4; ++a)
    for (int al = 0; al < 4; ++al) ed[a][al] = inv[al][a];

  for (int a = 0; a < 4; ++a)
    for (int al = 0; al < 4; ++al) {
      g.e_up[a][al] = eu[a][al].val.real();
      g.e_down[a][al] = ed[a][al].val.real();
      for (int mu = 0; mu < 4; ++mu) {
        g.de_up[mu][a][al] = eu[a][al].d1[mu].real();
        g.de_down[mu][a][al] = ed[a][al].d1[mu].real();
      }
    }

  // metric jets from the tetrad: g_{ab} = eta_c e^{(c)}_a e^{(c)}_b
  Jet2 gd[4][4], gu[4][4];
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) {
      Jet2 sd, su;
      for (int a = 0; a < 4; ++a) {
        sd = sd + cplx(gb.eta[a]) * (ed[a][al] * ed[a][be]);
        su = su + cplx(gb.eta[a]) * (eu[a][al] * eu[a][be]);
      }
      gd[al][be] = sd;
      gu[al][be] = su;
      g.g_down[al][be] = sd.val.real();
      g.g_up[al][be] = su.val.real();
      for (int mu = 0; mu < 4; ++mu) {
        g.dg_down[mu][al][be] = sd.d1[mu].real();
        g.dg_up[mu][al][be] = su.d1[mu].real();
      }
    }
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) {
      double s = 0.0;
      for (int nu = 0; nu < 4; ++nu) s += g.g_down[al][nu] * g.g_up[nu][be];
      require(std::abs(s - (al == be ? 1.0 : 0.0)) < 1e-12, "g g^{-1} != id");
    }

  // Christoffels and their first partials from the metric jets
  for (int mu = 0; mu < 4; ++mu)
    for (int al = 0; al < 4; ++al)
      for (int be = 0; be < 4; ++be) {
        double s = 0.0;
        for (int nu = 0; nu < 4; ++nu)
          s += 0.5 * g.g_up[mu][nu] *
               (g.dg_down[al][nu][be] + g.dg_down[be][nu][al] - g.dg_down[nu][al][be]);
        g.christoffel[mu][al][be] = s;
        for (int rho = 0; rho < 4; ++rho) {
          double ds = 0.0;
          for (int nu = 0; nu < 4; ++nu) {
            double bracket = g.dg_down[al][nu][be] + g.dg_down[be][nu][al] -
                             g.dg_down[nu][al][be];
            double dbracket = (gd[nu][be].d2[rho][al] + gd[nu][al].d2[rho][be] -
                               gd[al][be].d2[rho][nu]).real();
            ds += 0.5 * (g.dg_up[rho][mu][nu] * bracket + g.g_up[mu][nu] * dbracket);
          }
          g.dchristoffel[rho][mu][al][be] = ds;
        }
      }

  // Ricci rotation coefficients:
  // gamma_{abc} = (nabla_alpha e_{(a)beta}) e^beta_{(b)} e^alpha_{(c)},
  // with e_{(a)beta} = eta_a e^{(a)}_beta (no sum on a).
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int al = 0; al < 4; ++al)
          for (int be = 0; be < 4; ++be) {
            double grad = g.de_down[al][a][be];
            for (int mu = 0; mu < 4; ++mu)
              grad -= g.christoffel[mu][al][be] * g.e_down[a][mu];
            s += gb.eta[a] * grad * g.e_up[b][be] * g.e_up[c][al];
          }
        g.gamma_ricci[a][b][c] = s;
      }

  // spin connection Gamma_alpha = 1/2 sigma^{ab} e^beta_{(a)} nabla_alpha e_{(b)beta}
  for (int al = 0; al < 4; ++al) {
    MatrixC4 G;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double k = 0.0;
        for (int be = 0; be < 4; ++be) {
          double grad = g.de_down[al][b][be];
          for (int mu = 0; mu < 4; ++mu)
            grad -= g.christoffel[mu][al][be] * g.e_down[b][mu];
          k += g.e_up[a][be] * gb.eta[b] * grad;
        }
        G = G + cplx(0.5 * k) * gb.sigma[a][b];
      }
    g.spin_gamma[al] = G;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g.spin_sigma[al].m[i][j] = G.m[i][j];
        g.spin_sigma_bar[al].m[i][j] = G.m[2 + i][2 + j];
      }
    // off-diagonal blocks must vanish (sigma^{ab} is block diagonal)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        require(std::abs(G.m[i][2 + j]) + std::abs(G.m[2 + i][j]) < 1e-12,
                "spin connection not block diagonal");
  }

  // curvature: R^nu_{sigma alpha beta} = d_alpha Gamma^nu_{sigma beta}
  //   - d_beta Gamma^nu_{sigma alpha} + Gamma Gamma - Gamma Gamma
  for (int nu = 0; nu < 4; ++nu)
    for (int sg = 0; sg < 4; ++sg)
      for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) {
          double s = g.dchristoffel[al][nu][sg][be] - g.dchristoffel[be][nu][sg][al];
          for (int mu = 0; mu < 4; ++mu)
            s += g.christoffel[nu][al][mu] * g.christoffel[mu][sg][be] -
                 g.christoffel[nu][be][mu] * g.christoffel[mu][sg][al];
          g.riemann[nu][sg][al][be] = s;
        }
  for (int sg = 0; sg < 4; ++sg)
    for (int be = 0; be < 4; ++be) {
      double s = 0.0;
      for (int nu = 0; nu < 4; ++nu) s += g.riemann[nu][sg][nu][be];
      g.ricci[sg][be] = s;
    }

  // e(x) = det(e_{(a)beta}) = det(eta) det(e^{(a)}_beta) = -det(e_down)
  Jet2 dete;
  {
    Jet2 edm[4][4];
    for (int a = 0; a < 4; ++a)
      for (int al = 0; al < 4; ++al) edm[a][al] = ed[a][al];
    dete = -jet_det4(edm);
  }
  g.det_e = dete.val.real();
  for (int mu = 0; mu < 4; ++mu) g.ddet_e[mu] = dete.d1[mu].real();
  require(std::abs(g.det_e) > 1e-12, "tetrad determinant ~ 0");
  g.jfac = -g.det_e / std::abs(g.det_e);

  double detg = det4_real(g.g_down);
  require(detg < 0.0, "metric determinant not negative");
  require(std::abs(g.det_e * g.det_e + detg) /
                  std::max(1.0, std::abs(detg)) < 1e-10,
          "e(x)^2 != -g(x)");
  g.sqrtmg = std::abs(g.det_e);
  double sgn_e = g.det_e > 0.0 ? 1.0 : -1.0;
  for (int mu = 0; mu < 4; ++mu) g.dsqrtmg[mu] = sgn_e * g.ddet_e[mu];

  // eps^{alpha beta rho sigma}(x) by the tetrad contraction;
  // eps_{...}(x) = e(x) * symbol; E_{...}(x) = J(e) * eps_{...}(x).
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          int s = epsilon_symbol(a, b, c, d);
          if (s == 0) continue;
          for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be)
              for (int ro = 0; ro < 4; ++ro)
                for (int sig = 0; sig < 4; ++sig)
                  g.eps_x[al][be][ro][sig] += s * g.e_up[a][al] * g.e_up[b][be] *
                                              g.e_up[c][ro] * g.e_up[d][sig];
        }
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int ro = 0; ro < 4; ++ro)
        for (int sig = 0; sig < 4; ++sig) {
          int s = epsilon_symbol(al, be, ro, sig);
          g.eps_low_x[al][be][ro][sig] = g.det_e * s;
          g.bigE_x[al][be][ro][sig] = g.jfac * g.det_e * s;
        }
  return g;
}

void levi_civita_eps(const GeometryAt& g, double out[4][4][4][4]) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) out[a][b][c][d] = g.eps_x[a][b][c][d];
}

void levi_civita_bigE(const GeometryAt& g, double out[4][4][4][4]) {
  if (g.sqrtmg <= 0.0) throw std::runtime_error("non-Lorentzian metric");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) out[a][b][c][d] = g.bigE_x[a][b][c][d];
}

// ---- frame rotations and coordinate maps ----

TetradChart apply_local_lorentz(const TetradChart& chart, const LorentzFieldExpr& L,
                                const std::string& suffix) {
  // spot-check L^T eta L = eta at the box center and corners
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  std::vector<Point> probes;
  Point center;
  for (int i = 0; i < 4; ++i) center.x[i] = 0.5 * (chart.lo[i] + chart.hi[i]);
  probes.push_back(center);
  for (int corner = 0; corner < 4; ++corner) {
    Point q = center;
    q.x[corner] = chart.lo[corner] + 0.01 * (chart.hi[corner] - chart.lo[corner]);
    probes.push_back(q);
  }
  for (const Point& q : probes) {
    double Lv[4][4];
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) Lv[b][a] = L.L[b][a].eval(q).val.real();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) s += Lv[c][a] * eta[c] * Lv[c][b];
        double want = (a == b) ? eta[a] : 0.0;
        if (std::abs(s - want) > 1e-12)
          throw std::runtime_error("apply_local_lorentz: L is not a Lorentz matrix");
      }
  }

  TetradChart out = chart;
  out.name = chart.name + suffix;
  for (int b = 0; b < 4; ++b)
    for (int al = 0; al < 4; ++al) {
      FieldExpr s;
      for (int a = 0; a < 4; ++a) s = s + L.L[b][a] * chart.tetrad[a][al];
      out.tetrad[b][al] = s;
    }
  return out;
}

TetradChart p_reflect_tetrad(const TetradChart& chart) {
  LorentzFieldExpr L;
  L.L[0][0] = fe_const(1.0);
  for (int k = 1; k < 4; ++k) L.L[k][k] = fe_const(-1.0);
  return apply_local_lorentz(chart, L, "_pref");
}

LinearCheckReport linear_coordinate_check(const TetradChart& chart,
                                          const double A[4][4],
                                          const GammaBasis& gb,
                                          std::uint64_t seed) {
  double detA = det4_real(A);
  if (std::abs(detA) < 1e-12)
    throw std::runtime_error("linear_coordinate_check: singular map");
  // A^{-1} for the argument substitution x = A^{-1} x'
  MatrixC4 Ac;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Ac.m[i][j] = A[i][j];
  MatrixC4 Ainv_c = inverse(Ac);
  double Ainv[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Ainv[i][j] = Ainv_c.m[i][j].real();

  // transformed tetrad as expressions of x': e'^{alpha'}_{(a)}(x') =
  // A^{alpha'}_alpha e^alpha_{(a)}(A^{-1} x')
  FieldExpr tp[4][4];
  for (int a = 0; a < 4; ++a)
    for (int alp = 0; alp < 4; ++alp) {
      FieldExpr s;
      for (int al = 0; al < 4; ++al)
        s = s + cplx(A[alp][al]) * fe_linear_subst(chart.tetrad[a][al], Ainv);
      tp[a][alp] = s;
    }

  LinearCheckReport rep;
  for (const Point& p : sample_points(chart, seed, 8)) {
    double M[4][4], Mp[4][4];
    for (int a = 0; a < 4; ++a)
      for (int al = 0; al < 4; ++al) M[a][al] = chart.tetrad[a][al].eval(p).val.real();
    Point pp;
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j) s += A[i][j] * p.x[j];
      pp.x[i] = s;
    }
    for (int a = 0; a < 4; ++a)
      for (int al = 0; al < 4; ++al) Mp[a][al] = tp[a][al].eval(pp).val.real();
    // e(x) = -det(e_down) = -1/det(e_up)
    double e = -1.0 / det4_real(M);
    double ep = -1.0 / det4_real(Mp);
    double want = e / detA;
    rep.max_err_det = std::max(rep.max_err_det,
                               std::abs(ep - want) / std::max(1.0, std::abs(want)));
    double J = -e / std::abs(e), Jp = -ep / std::abs(ep);
    double sgnA = detA > 0.0 ? 1.0 : -1.0;
    rep.max_err_j = std::max(rep.max_err_j, std::abs(Jp - sgnA * J));
  }
  (void)gb;
  rep.pass = rep.max_err_det < 1e-10 && rep.max_err_j < 1e-10;
  return rep;
}

// ---- covariant derivatives ----

namespace {
int pow4(int r) { return 1 << (2 * r); }
}  // namespace

std::vector<cplx> covariant_derivative(const GeometryAt& g, int rank,
                                       const std::vector<cplx>& val,
                                       const std::vector<cplx>& d1) {
  if (rank < 0 || rank > 4) throw std::invalid_argument("unsupported valence");
  int N = pow4(rank);
  if ((int)val.size() != N || (int)d1.size() != 4 * N)
    throw std::invalid_argument("covariant_derivative: shape mismatch");
  std::vector<cplx> out(4 * N);
  for (int mu = 0; mu < 4; ++mu)
    for (int I = 0; I < N; ++I) {
      cplx s = d1[mu * N + I];
      // one Christoffel correction per lower index
      for (int k = 0; k < rank; ++k) {
        int shift = 2 * (rank - 1 - k);
        int ak = (I >> shift) & 3;
        int base = I & ~(3 << shift);
        for (int lam = 0; lam < 4; ++lam)
          s -= g.christoffel[lam][mu][ak] * val[base | (lam << shift)];
      }
      out[mu * N + I] = s;
    }
  return out;
}

std::vector<cplx> second_covariant_derivative(const GeometryAt& g, int rank,
                                              const std::vector<cplx>& val,
                                              const std::vector<cplx>& d1,
                                              const std::vector<cplx>& d2) {
  if (rank < 0 || rank > 2) throw std::invalid_argument("unsupported valence");
  int N = pow4(rank);
  if ((int)val.size() != N || (int)d1.size() != 4 * N || (int)d2.size() != 16 * N)
    throw std::invalid_argument("second_covariant_derivative: shape mismatch");

  // S_{nu I} = nabla_nu T_I and its partials d_mu S_{nu I}
  std::vector<cplx> S = covariant_derivative(g, rank, val, d1);
  std::vector<cplx> dS(16 * N);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int I = 0; I < N; ++I) {
        cplx s = d2[(mu * 4 + nu) * N + I];
        for (int k = 0; k < rank; ++k) {
          int shift = 2 * (rank - 1 - k);
          int ak = (I >> shift) & 3;
          int base = I & ~(3 << shift);
          for (int lam = 0; lam < 4; ++lam) {
            int J = base | (lam << shift);
            s -= g.dchristoffel[mu][lam][nu][ak] * val[J] +
                 g.christoffel[lam][nu][ak] * d1[mu * N + J];
          }
        }
        dS[(mu * 4 + nu) * N + I] = s;
      }

  // nabla_mu S_{nu I}: correction on nu and on every index of I
  std::vector<cplx> out(16 * N);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int I = 0; I < N; ++I) {
        cplx s = dS[(mu * 4 + nu) * N + I];
        for (int lam = 0; lam < 4; ++lam)
          s -= g.christoffel[lam][mu][nu] * S[lam * N + I];
        for (int k = 0; k < rank; ++k) {
          int shift = 2 * (rank - 1 - k);
          int ak = (I >> shift) & 3;
          int base = I & ~(3 << shift);
          for (int lam = 0; lam < 4; ++lam)
            s -= g.christoffel[lam][mu][ak] * S[nu * N + (base | (lam << shift))];
        }
        out[(mu * 4 + nu) * N + I] = s;
      }
  return out;
}

void riemann_ricci(const TetradChart& chart, const Point& p, const GammaBasis& gb,
                   double riemann[4][4][4][4], double ricci[4][4]) {
  GeometryAt g = geometry_at(chart, p, gb);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      ricci[a][b] = g.ricci[a][b];
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) riemann[a][b][c][d] = g.riemann[a][b][c][d];
    }
}

std::vector<Point> sample_points(const TetradChart& chart, std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("sample_points: n < 1");
  SplitMix64 rng(seed ^ 0x6b79u);
  // Latin hypercube: one stratum per point per coordinate, shuffled
  std::vector<std::vector<int>> strata(4, std::vector<int>(n));
  for (int c = 0; c < 4; ++c) {
    for (int k = 0; k < n; ++k) strata[c][k] = k;
    for (int k = n - 1; k > 0; --k) {
      int j = (int)(rng.next() % (std::uint64_t)(k + 1));
      std::swap(strata[c][k], strata[c][j]);
    }
  }
  std::vector<Point> out(n);
  for (int k = 0; k < n; ++k)
    for (int c = 0; c < 4; ++c) {
      double width = chart.hi[c] - chart.lo[c];
      double lo = chart.lo[c] + 0.01 * width;  // interior margin
      double w = 0.98 * width;
      double u = (strata[c][k] + rng.uniform(0.0, 1.0)) / n;
      out[k].x[c] = lo + w * u;
    }
  return out;
}

}  // namespace dkl
