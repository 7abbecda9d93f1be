#include "dkl/dk_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkl {

namespace {

struct MultipletJets {
  Jet2 s, ps;
  Jet2 v[4], pv[4];
  Jet2 t[4][4];
};

MultipletJets eval_multiplet(const MultipletField& F, const Point& p) {
  MultipletJets j;
  j.s = F.s.eval(p);
  j.ps = F.ps.eval(p);
  for (int i = 0; i < 4; ++i) {
    j.v[i] = F.v[i].eval(p);
    j.pv[i] = F.pv[i].eval(p);
  }
  for (int k = 0; k < 6; ++k) {
    Jet2 val = F.t_pairs[k].eval(p);
    j.t[kTensorPairs[k][0]][kTensorPairs[k][1]] = val;
    j.t[kTensorPairs[k][1]][kTensorPairs[k][0]] = -val;
  }
  return j;
}

LorentzMultiplet slice_val(const MultipletJets& j) {
  LorentzMultiplet m;
  m.s = j.s.val;
  m.ps = j.ps.val;
  for (int i = 0; i < 4; ++i) {
    m.v[i] = j.v[i].val;
    m.pv[i] = j.pv[i].val;
    for (int k = 0; k < 4; ++k) m.t[i][k] = j.t[i][k].val;
  }
  return m;
}

LorentzMultiplet slice_d1(const MultipletJets& j, int mu) {
  LorentzMultiplet m;
  m.s = j.s.d1[mu];
  m.ps = j.ps.d1[mu];
  for (int i = 0; i < 4; ++i) {
    m.v[i] = j.v[i].d1[mu];
    m.pv[i] = j.pv[i].d1[mu];
    for (int k = 0; k < 4; ++k) m.t[i][k] = j.t[i][k].d1[mu];
  }
  return m;
}

// coordinate-index components with first partials, obtained by contracting
// the frame components with e^{(a)}_alpha
struct CoordJets {
  cplx s{};
  cplx ds[4]{};
  cplx ps{};
  cplx dps[4]{};
  cplx v[4]{};
  cplx dv[4][4]{};  // [mu][alpha]
  cplx pv[4]{};
  cplx dpv[4][4]{};
  cplx t[4][4]{};
  cplx dt[4][4][4]{};  // [mu][alpha][beta]
};

CoordJets coord_components(const GeometryAt& g, const MultipletJets& j) {
  CoordJets c;
  c.s = j.s.val;
  c.ps = j.ps.val;
  for (int mu = 0; mu < 4; ++mu) {
    c.ds[mu] = j.s.d1[mu];
    c.dps[mu] = j.ps.d1[mu];
  }
  for (int al = 0; al < 4; ++al) {
    for (int a = 0; a < 4; ++a) {
      c.v[al] += g.e_down[a][al] * j.v[a].val;
      c.pv[al] += g.e_down[a][al] * j.pv[a].val;
      for (int mu = 0; mu < 4; ++mu) {
        c.dv[mu][al] += g.de_down[mu][a][al] * j.v[a].val +
                        g.e_down[a][al] * j.v[a].d1[mu];
        c.dpv[mu][al] += g.de_down[mu][a][al] * j.pv[a].val +
                         g.e_down[a][al] * j.pv[a].d1[mu];
      }
    }
    for (int be = 0; be < 4; ++be)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b) continue;
          c.t[al][be] += g.e_down[a][al] * g.e_down[b][be] * j.t[a][b].val;
          for (int mu = 0; mu < 4; ++mu)
            c.dt[mu][al][be] +=
                g.de_down[mu][a][al] * g.e_down[b][be] * j.t[a][b].val +
                g.e_down[a][al] * g.de_down[mu][b][be] * j.t[a][b].val +
                g.e_down[a][al] * g.e_down[b][be] * j.t[a][b].d1[mu];
        }
  }
  return c;
}

void pack1(const cplx v[4], const cplx dv[4][4], std::vector<cplx>& val,
           std::vector<cplx>& d1) {
  val.assign(v, v + 4);
  d1.assign(16, 0.0);
  for (int mu = 0; mu < 4; ++mu)
    for (int al = 0; al < 4; ++al) d1[mu * 4 + al] = dv[mu][al];
}

void pack2(const cplx t[4][4], const cplx dt[4][4][4], std::vector<cplx>& val,
           std::vector<cplx>& d1) {
  val.assign(16, 0.0);
  d1.assign(64, 0.0);
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be) {
      val[al * 4 + be] = t[al][be];
      for (int mu = 0; mu < 4; ++mu) d1[mu * 16 + al * 4 + be] = dt[mu][al][be];
    }
}

// raise the last three / last two indices of a fully lowered rank-4 density
void raise_last3(const GeometryAt& g, const double low[4][4][4][4],
                 double out[4][4][4][4]) {
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          double acc = 0.0;
          for (int b = 0; b < 4; ++b)
            for (int r2 = 0; r2 < 4; ++r2)
              for (int s2 = 0; s2 < 4; ++s2)
                acc += g.g_up[be][b] * g.g_up[r][r2] * g.g_up[s][s2] *
                       low[al][b][r2][s2];
          out[al][be][r][s] = acc;
        }
}

void raise_last2(const GeometryAt& g, const double low[4][4][4][4],
                 double out[4][4][4][4]) {
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          double acc = 0.0;
          for (int r2 = 0; r2 < 4; ++r2)
            for (int s2 = 0; s2 < 4; ++s2)
              acc += g.g_up[r][r2] * g.g_up[s][s2] * low[al][be][r2][s2];
          out[al][be][r][s] = acc;
        }
}

// the covariant derivatives every coordinate-index system needs
struct CoordCov {
  std::vector<cplx> cdv, cdpv, cdt;  // nabla_mu of Psi_al, Psi~_al, Psi_{al be}
};

CoordCov coord_cov(const GeometryAt& g, const CoordJets& c) {
  CoordCov cc;
  std::vector<cplx> val, d1;
  pack1(c.v, c.dv, val, d1);
  cc.cdv = covariant_derivative(g, 1, val, d1);
  pack1(c.pv, c.dpv, val, d1);
  cc.cdpv = covariant_derivative(g, 1, val, d1);
  pack2(c.t, c.dt, val, d1);
  cc.cdt = covariant_derivative(g, 2, val, d1);
  return cc;
}

constexpr int kFormTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

}  // namespace

FieldExpr MultipletField::t(int m, int n) const {
  for (int k = 0; k < 6; ++k) {
    if (kTensorPairs[k][0] == m && kTensorPairs[k][1] == n) return t_pairs[k];
    if (kTensorPairs[k][0] == n && kTensorPairs[k][1] == m) return -t_pairs[k];
  }
  return FieldExpr();  // diagonal
}

MultipletField random_multiplet_field(std::uint64_t seed, int degree,
                                      double bound, double mass) {
  if (mass <= 0.0) throw std::invalid_argument("mass must be positive");
  MultipletField F;
  F.mass = mass;
  // distinct sub-seeds per component, all derived from the caller's seed
  std::uint64_t k = 0;
  auto sub = [&]() { return seed * 1000003ULL + (++k); };
  F.s = random_polynomial(sub(), degree, bound);
  F.ps = random_polynomial(sub(), degree, bound);
  for (int i = 0; i < 4; ++i) {
    F.v[i] = random_polynomial(sub(), degree, bound);
    F.pv[i] = random_polynomial(sub(), degree, bound);
  }
  for (int i = 0; i < 6; ++i) F.t_pairs[i] = random_polynomial(sub(), degree, bound);
  return F;
}

MatrixField matrix_field_at(const GammaBasis& gb, const MultipletField& F,
                            const Point& p) {
  MultipletJets j = eval_multiplet(F, p);
  MatrixField U;
  U.val = expand_multiplet(gb, slice_val(j));
  for (int mu = 0; mu < 4; ++mu) U.d1[mu] = expand_multiplet(gb, slice_d1(j, mu));
  return U;
}

const std::vector<cplx>& ResidualSet::at(const std::string& label) const {
  for (const auto& e : entries)
    if (e.first == label) return e.second;
  throw std::out_of_range("no residual entry labeled " + label);
}

void ResidualSet::add(const std::string& label, std::vector<cplx> values) {
  entries.emplace_back(label, std::move(values));
}

double residual_set_dist(const ResidualSet& a, const ResidualSet& b) {
  double worst = 0.0;
  for (const auto& e : a.entries) {
    const std::vector<cplx>* other = nullptr;
    for (const auto& f : b.entries)
      if (f.first == e.first) other = &f.second;
    if (!other) continue;
    if (other->size() != e.second.size())
      throw std::runtime_error("residual entry size mismatch: " + e.first);
    for (std::size_t i = 0; i < e.second.size(); ++i) {
      double d = std::abs(e.second[i] - (*other)[i]) /
                 std::max({1.0, std::abs(e.second[i]), std::abs((*other)[i])});
      worst = std::max(worst, d);
    }
  }
  return worst;
}

// ---- matrix formulation ----

MatrixC4 residual_matrix_core(const GeometryAt& g, const GammaBasis& gb,
                              const MatrixField& U, double mass) {
  MatrixC4 R = cplx(-mass) * U.val;
  for (int al = 0; al < 4; ++al) {
    MatrixC4 gamma_x;  // gamma^alpha(x) = e^alpha_{(c)} gamma^c
    for (int c = 0; c < 4; ++c) gamma_x = gamma_x + cplx(g.e_up[c][al]) * gb.gamma[c];
    MatrixC4 X =
        U.d1[al] + g.spin_gamma[al] * U.val + U.val * transpose(g.spin_gamma[al]);
    R = R + I_UNIT * (gamma_x * X);
  }
  return R;
}

MatrixC4 residual_matrix(const TetradChart& chart, const MultipletField& F,
                         const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  return residual_matrix_core(g, gb, matrix_field_at(gb, F, p), F.mass);
}

MatrixC4 residual_matrix_field(const TetradChart& chart, const MatrixFieldFn& U,
                               double mass, const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  return residual_matrix_core(g, gb, U(p), mass);
}

MatrixC4 flat_residual_matrix(const MultipletField& F, const Point& p,
                              const GammaBasis& gb) {
  MatrixField U = matrix_field_at(gb, F, p);
  MatrixC4 R = cplx(-F.mass) * U.val;
  for (int a = 0; a < 4; ++a) R = R + I_UNIT * (gb.gamma[a] * U.d1[a]);
  return R;
}

// ---- 2-spinor blocks ----

namespace {

TwoSpinorResidual two_spinor_core(const GammaBasis& gb, const MatrixField& U,
                                  double mass, const double eup[4][4],
                                  const MatrixC2 Sg[4], const MatrixC2 Sb[4]) {
  SpinorBlocks b = split_blocks(U.val);
  SpinorBlocks db[4];
  for (int mu = 0; mu < 4; ++mu) db[mu] = split_blocks(U.d1[mu]);

  TwoSpinorResidual r;
  cplx mm(-mass);
  r.ul = mm * b.xi;
  r.ur = mm * b.delta;
  r.ll = mm * b.h;
  r.lr = mm * b.eta_blk;
  for (int al = 0; al < 4; ++al) {
    MatrixC2 sig_x, sigbar_x;  // sigma^alpha(x), sigbar^alpha(x)
    for (int a = 0; a < 4; ++a) {
      sig_x = sig_x + cplx(eup[a][al]) * gb.sig2[a];
      sigbar_x = sigbar_x + cplx(eup[a][al]) * gb.sigbar2[a];
    }
    MatrixC2 A = db[al].xi + Sg[al] * b.xi + b.xi * transpose(Sg[al]);
    MatrixC2 B = db[al].delta + Sg[al] * b.delta + b.delta * transpose(Sb[al]);
    MatrixC2 C = db[al].h + Sb[al] * b.h + b.h * transpose(Sg[al]);
    MatrixC2 D = db[al].eta_blk + Sb[al] * b.eta_blk + b.eta_blk * transpose(Sb[al]);
    r.ul = r.ul + I_UNIT * (sig_x * C);
    r.ur = r.ur + I_UNIT * (sig_x * D);
    r.ll = r.ll + I_UNIT * (sigbar_x * A);
    r.lr = r.lr + I_UNIT * (sigbar_x * B);
  }
  return r;
}

}  // namespace

TwoSpinorResidual residual_two_spinor(const TetradChart& chart,
                                      const MultipletField& F, const Point& p,
                                      const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  return two_spinor_core(gb, matrix_field_at(gb, F, p), F.mass, g.e_up,
                         g.spin_sigma, g.spin_sigma_bar);
}

TwoSpinorResidual flat_residual_two_spinor(const MultipletField& F, const Point& p,
                                           const GammaBasis& gb) {
  double eup[4][4]{};
  for (int i = 0; i < 4; ++i) eup[i][i] = 1.0;
  MatrixC2 zero[4]{};
  return two_spinor_core(gb, matrix_field_at(gb, F, p), F.mass, eup, zero, zero);
}

// ---- tetrad components ----

namespace {

// tetrad-component rows given frame jets, rotation coefficients G_{abc}, and
// D_c = e^alpha_{(c)} d_alpha; shared by the curved operator and the flat
// evaluator (G = 0, identity tetrad)
ResidualSet tetrad_rows(const MultipletJets& j, const double eup[4][4],
                        const double G[4][4][4], double mass, const Point& p) {
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  auto D = [&](int c, const Jet2& x) {
    cplx s = 0.0;
    for (int al = 0; al < 4; ++al) s += eup[c][al] * x.d1[al];
    return s;
  };
  // trace of the rotation coefficients: Gc_b = eta^{ac} G_{abc}
  double Gc[4];
  for (int b = 0; b < 4; ++b) {
    Gc[b] = 0.0;
    for (int a = 0; a < 4; ++a) Gc[b] += eta[a] * G[a][b][a];
  }
  // frame dual t~_{mn} = 1/2 eps_{mn}^{ab} t_{ab} with its frame derivatives
  cplx tdual[4][4]{};
  cplx Dtdual[4][4][4]{};  // [c][m][n]
  for (int m2 = 0; m2 < 4; ++m2)
    for (int n2 = 0; n2 < 4; ++n2)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          int e = epsilon_symbol(m2, n2, a, b);
          if (e == 0) continue;
          double w = 0.5 * eta[m2] * eta[n2] * double(e);
          tdual[m2][n2] += w * j.t[a][b].val;
          for (int c = 0; c < 4; ++c) Dtdual[c][m2][n2] += w * D(c, j.t[a][b]);
        }

  ResidualSet rs;
  rs.name = "tetrad";
  rs.point = p;

  cplx scalar = mass * j.s.val, pseudoscalar = mass * j.ps.val;
  for (int l = 0; l < 4; ++l) {
    scalar += eta[l] * D(l, j.v[l]) + eta[l] * Gc[l] * j.v[l].val;
    pseudoscalar += eta[l] * D(l, j.pv[l]) + eta[l] * Gc[l] * j.pv[l].val;
  }
  rs.add("scalar", {scalar});
  rs.add("pseudoscalar", {pseudoscalar});

  std::vector<cplx> vec(4), pvec(4);
  for (int k = 0; k < 4; ++k) {
    cplx rv = D(k, j.s) - mass * j.v[k].val;
    cplx rp = D(k, j.ps) - mass * j.pv[k].val;
    for (int c = 0; c < 4; ++c) {
      rv += eta[c] * D(c, j.t[k][c]);
      rp += eta[c] * Dtdual[c][k][c];
    }
    for (int m2 = 0; m2 < 4; ++m2)
      for (int n2 = 0; n2 < 4; ++n2) {
        double w = G[k][m2][n2] * eta[m2] * eta[n2];  // raises (m,n)
        rv += w * j.t[m2][n2].val;
        rp += w * tdual[m2][n2];
      }
    for (int l = 0; l < 4; ++l) {
      rv += eta[l] * Gc[l] * j.t[k][l].val;
      rp += eta[l] * Gc[l] * tdual[k][l];
    }
    vec[k] = rv;
    pvec[k] = rp;
  }
  rs.add("vector", vec);
  rs.add("pseudovector", pvec);

  std::vector<cplx> ten(6);
  for (int q = 0; q < 6; ++q) {
    int m2 = kTensorPairs[q][0], n2 = kTensorPairs[q][1];
    cplx r = D(m2, j.v[n2]) - D(n2, j.v[m2]) - mass * j.t[m2][n2].val;
    for (int c = 0; c < 4; ++c)
      for (int l = 0; l < 4; ++l) {
        int e = epsilon_symbol(m2, n2, c, l);
        if (e == 0) continue;
        r -= eta[m2] * eta[n2] * double(e) * D(c, j.pv[l]);
      }
    for (int l = 0; l < 4; ++l)
      r += eta[l] * (G[l][m2][n2] - G[l][n2][m2]) * j.v[l].val;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        int e = epsilon_symbol(a, c, m2, n2);
        if (e == 0) continue;
        for (int b = 0; b < 4; ++b)
          r -= eta[m2] * eta[n2] * double(e) * G[b][a][c] * eta[b] * j.pv[b].val;
      }
    ten[q] = r;
  }
  rs.add("tensor", ten);
  return rs;
}

}  // namespace

ResidualSet residual_tetrad(const TetradChart& chart, const MultipletField& F,
                            const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  MultipletJets j = eval_multiplet(F, p);
  // the rotation coefficients of the component system: G_{abc} = -gamma_{abc}
  double G[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) G[a][b][c] = -g.gamma_ricci[a][b][c];
  return tetrad_rows(j, g.e_up, G, F.mass, p);
}

ResidualSet flat_residual_tetrad(const MultipletField& F, const Point& p,
                                 const GammaBasis& gb) {
  (void)gb;
  double eup[4][4]{};
  for (int i = 0; i < 4; ++i) eup[i][i] = 1.0;
  double G[4][4][4]{};
  return tetrad_rows(eval_multiplet(F, p), eup, G, F.mass, p);
}

// ---- coordinate tensors ----

ResidualSet residual_tensor(const TetradChart& chart, const MultipletField& F,
                            const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  CoordJets c = coord_components(g, eval_multiplet(F, p));
  CoordCov cc = coord_cov(g, c);
  double m = F.mass;

  double e13[4][4][4][4], e22[4][4][4][4];
  raise_last3(g, g.eps_low_x, e13);
  raise_last2(g, g.eps_low_x, e22);

  ResidualSet rs;
  rs.name = "tensor";
  rs.point = p;

  cplx T1 = m * c.s, T2 = m * c.ps;
  for (int al = 0; al < 4; ++al)
    for (int mu = 0; mu < 4; ++mu) {
      T1 += g.g_up[al][mu] * cc.cdv[mu * 4 + al];
      T2 += g.g_up[al][mu] * cc.cdpv[mu * 4 + al];
    }
  rs.add("scalar", {T1});
  rs.add("pseudoscalar", {T2});

  std::vector<cplx> T3(4), T4(4);
  for (int al = 0; al < 4; ++al) {
    cplx r3 = c.ds[al] - m * c.v[al];
    cplx r4 = c.dps[al] - m * c.pv[al];
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        r3 += g.g_up[be][mu] * cc.cdt[mu * 16 + al * 4 + be];
    for (int be = 0; be < 4; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          r4 += 0.5 * e13[al][be][r][s] * cc.cdt[be * 16 + r * 4 + s];
    T3[al] = r3;
    T4[al] = r4;
  }
  rs.add("vector", T3);
  rs.add("pseudovector", T4);

  std::vector<cplx> T5(6);
  for (int q = 0; q < 6; ++q) {
    int al = kTensorPairs[q][0], be = kTensorPairs[q][1];
    cplx r = cc.cdv[al * 4 + be] - cc.cdv[be * 4 + al] - m * c.t[al][be];
    for (int ro = 0; ro < 4; ++ro)
      for (int s = 0; s < 4; ++s)
        r -= e22[al][be][ro][s] * cc.cdpv[ro * 4 + s];
    T5[q] = r;
  }
  rs.add("tensor", T5);
  return rs;
}

// ---- antisymmetric forms ----

ResidualSet residual_antisym(const TetradChart& chart, const MultipletField& F,
                             const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  CoordJets c = coord_components(g, eval_multiplet(F, p));
  CoordCov cc = coord_cov(g, c);
  double m = F.mass;

  // rank-3 form psi3_{a b r} = eps_{a b r s}(x) psi~^s and rank-4 form
  // psi4_{a b r s} = eps_{a b r s}(x) psi~ (eps_low = e(x) * symbol)
  cplx pvu[4]{}, dpvu[4][4]{};  // psi~^s, [mu][s]
  for (int s = 0; s < 4; ++s)
    for (int nu = 0; nu < 4; ++nu) {
      pvu[s] += g.g_up[s][nu] * c.pv[nu];
      for (int mu = 0; mu < 4; ++mu)
        dpvu[mu][s] += g.dg_up[mu][s][nu] * c.pv[nu] + g.g_up[s][nu] * c.dpv[mu][nu];
    }
  std::vector<cplx> p3(64, 0.0), dp3(256, 0.0);
  std::vector<cplx> p4(256, 0.0), dp4(1024, 0.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          int e = epsilon_symbol(a, b, r, s);
          if (e == 0) continue;
          int I3 = (a * 4 + b) * 4 + r;
          p3[I3] += g.det_e * double(e) * pvu[s];
          int I4 = I3 * 4 + s;
          p4[I4] = g.det_e * double(e) * c.ps;
          for (int mu = 0; mu < 4; ++mu) {
            dp3[mu * 64 + I3] += g.ddet_e[mu] * double(e) * pvu[s] +
                                 g.det_e * double(e) * dpvu[mu][s];
            dp4[mu * 256 + I4] = g.ddet_e[mu] * double(e) * c.ps +
                                 g.det_e * double(e) * c.dps[mu];
          }
        }
  auto cd3 = covariant_derivative(g, 3, p3, dp3);
  auto cd4 = covariant_derivative(g, 4, p4, dp4);

  ResidualSet rs;
  rs.name = "antisym";
  rs.point = p;

  cplx F1 = m * c.s;
  for (int r = 0; r < 4; ++r)
    for (int mu = 0; mu < 4; ++mu) F1 += g.g_up[r][mu] * cc.cdv[mu * 4 + r];
  rs.add("form0", {F1});

  std::vector<cplx> F2(4);
  for (int a = 0; a < 4; ++a) {
    cplx r = c.ds[a] - m * c.v[a];
    for (int ro = 0; ro < 4; ++ro)
      for (int mu = 0; mu < 4; ++mu)
        r += g.g_up[ro][mu] * cc.cdt[mu * 16 + a * 4 + ro];
    F2[a] = r;
  }
  rs.add("form1", F2);

  std::vector<cplx> F3(6);
  for (int q = 0; q < 6; ++q) {
    int a = kTensorPairs[q][0], b = kTensorPairs[q][1];
    cplx r = cc.cdv[a * 4 + b] - cc.cdv[b * 4 + a] - m * c.t[a][b];
    for (int ro = 0; ro < 4; ++ro)
      for (int mu = 0; mu < 4; ++mu)
        r -= g.g_up[ro][mu] * cd3[mu * 64 + (a * 4 + b) * 4 + ro];
    F3[q] = r;
  }
  rs.add("form2", F3);

  std::vector<cplx> F4(4);
  for (int q = 0; q < 4; ++q) {
    int a = kFormTriples[q][0], b = kFormTriples[q][1], s = kFormTriples[q][2];
    cplx r = -m * p3[(a * 4 + b) * 4 + s];
    // exterior derivative of the 2-form part ...
    r += cc.cdt[a * 16 + b * 4 + s] - cc.cdt[b * 16 + a * 4 + s] +
         cc.cdt[s * 16 + a * 4 + b];
    // ... minus the divergence of the 4-form on its first index
    for (int ro = 0; ro < 4; ++ro)
      for (int mu = 0; mu < 4; ++mu)
        r -= g.g_up[ro][mu] * cd4[mu * 256 + ((ro * 4 + a) * 4 + b) * 4 + s];
    F4[q] = r;
  }
  rs.add("form3", F4);

  // single independent component (0,1,2,3) of the 4-form equation
  cplx F5 = -m * p4[0 * 64 + 1 * 16 + 2 * 4 + 3];
  F5 += cd3[0 * 64 + (1 * 4 + 2) * 4 + 3] - cd3[1 * 64 + (0 * 4 + 2) * 4 + 3] +
        cd3[2 * 64 + (0 * 4 + 1) * 4 + 3] - cd3[3 * 64 + (0 * 4 + 1) * 4 + 2];
  rs.add("form4", {F5});
  return rs;
}

// ---- pseudotensor (barred) form ----

ResidualSet residual_pseudo(const TetradChart& chart, const MultipletField& F,
                            const Point& p, const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  CoordJets c = coord_components(g, eval_multiplet(F, p));
  CoordCov cc = coord_cov(g, c);
  double m = F.mass;
  double J = g.jfac;

  // barred variables: psi-bar = J psi~, psi-bar_al = J psi~_al
  cplx bs = J * c.ps;
  cplx dbs[4];
  cplx bv[4], dbv[4][4];
  for (int al = 0; al < 4; ++al) bv[al] = J * c.pv[al];
  for (int mu = 0; mu < 4; ++mu) {
    dbs[mu] = J * c.dps[mu];
    for (int al = 0; al < 4; ++al) dbv[mu][al] = J * c.dpv[mu][al];
  }
  std::vector<cplx> val, d1;
  pack1(bv, dbv, val, d1);
  auto cdbv = covariant_derivative(g, 1, val, d1);

  double E13[4][4][4][4], E22[4][4][4][4];
  raise_last3(g, g.bigE_x, E13);
  raise_last2(g, g.bigE_x, E22);

  ResidualSet rs;
  rs.name = "pseudo";
  rs.point = p;

  cplx P1 = m * c.s, P2 = m * bs;
  for (int al = 0; al < 4; ++al)
    for (int mu = 0; mu < 4; ++mu) {
      P1 += g.g_up[al][mu] * cc.cdv[mu * 4 + al];
      P2 += g.g_up[al][mu] * cdbv[mu * 4 + al];
    }
  rs.add("scalar", {P1});
  rs.add("pseudoscalar", {P2});

  std::vector<cplx> P3(4), P4(4);
  for (int al = 0; al < 4; ++al) {
    cplx r3 = c.ds[al] - m * c.v[al];
    cplx r4 = dbs[al] - m * bv[al];
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        r3 += g.g_up[be][mu] * cc.cdt[mu * 16 + al * 4 + be];
    for (int be = 0; be < 4; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          r4 += 0.5 * E13[al][be][r][s] * cc.cdt[be * 16 + r * 4 + s];
    P3[al] = r3;
    P4[al] = r4;
  }
  rs.add("vector", P3);
  rs.add("pseudovector", P4);

  std::vector<cplx> P5(6);
  for (int q = 0; q < 6; ++q) {
    int al = kTensorPairs[q][0], be = kTensorPairs[q][1];
    cplx r = cc.cdv[al * 4 + be] - cc.cdv[be * 4 + al] - m * c.t[al][be];
    for (int ro = 0; ro < 4; ++ro)
      for (int s = 0; s < 4; ++s)
        r -= E22[al][be][ro][s] * cdbv[ro * 4 + s];
    P5[q] = r;
  }
  rs.add("tensor", P5);
  return rs;
}

// ---- projection and conversions ----

ResidualSet project_residual(const GammaBasis& gb, const MatrixC4& R) {
  LorentzMultiplet m = project_multiplet(gb, R);
  ResidualSet rs;
  rs.name = "matrix_projected";
  // the scalar and pseudoscalar slots of the operator come out with the
  // opposite sign relative to their expansion coefficients
  rs.add("scalar", {-m.s});
  rs.add("pseudoscalar", {-m.ps});
  rs.add("vector", {m.v[0], m.v[1], m.v[2], m.v[3]});
  rs.add("pseudovector", {m.pv[0], m.pv[1], m.pv[2], m.pv[3]});
  std::vector<cplx> t(6);
  for (int q = 0; q < 6; ++q) t[q] = m.t[kTensorPairs[q][0]][kTensorPairs[q][1]];
  rs.add("tensor", t);
  return rs;
}

ResidualSet tetrad_to_tensor(const GeometryAt& g, const ResidualSet& rs) {
  ResidualSet out;
  out.name = rs.name + "_coord";
  out.point = rs.point;
  out.add("scalar", rs.at("scalar"));
  out.add("pseudoscalar", rs.at("pseudoscalar"));
  const auto& vec = rs.at("vector");
  const auto& pvec = rs.at("pseudovector");
  std::vector<cplx> v(4, 0.0), pv(4, 0.0);
  for (int al = 0; al < 4; ++al)
    for (int a = 0; a < 4; ++a) {
      v[al] += g.e_down[a][al] * vec[a];
      pv[al] += g.e_down[a][al] * pvec[a];
    }
  out.add("vector", v);
  out.add("pseudovector", pv);
  const auto& tp = rs.at("tensor");
  cplx tf[4][4]{};
  for (int q = 0; q < 6; ++q) {
    tf[kTensorPairs[q][0]][kTensorPairs[q][1]] = tp[q];
    tf[kTensorPairs[q][1]][kTensorPairs[q][0]] = -tp[q];
  }
  std::vector<cplx> t(6, 0.0);
  for (int q = 0; q < 6; ++q) {
    int al = kTensorPairs[q][0], be = kTensorPairs[q][1];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        t[q] += g.e_down[a][al] * g.e_down[b][be] * tf[a][b];
  }
  out.add("tensor", t);
  return out;
}

ResidualSet tensor_to_antisym(const GeometryAt& g, const ResidualSet& rs) {
  ResidualSet out;
  out.name = rs.name + "_forms";
  out.point = rs.point;
  out.add("form0", rs.at("scalar"));
  out.add("form1", rs.at("vector"));
  out.add("form2", rs.at("tensor"));
  // the 3-form rows dualize the pseudovector rows: eps_{abs}^lambda T4_lambda
  const auto& T4 = rs.at("pseudovector");
  std::vector<cplx> f3(4, 0.0);
  for (int q = 0; q < 4; ++q) {
    int a = kFormTriples[q][0], b = kFormTriples[q][1], s = kFormTriples[q][2];
    for (int lam = 0; lam < 4; ++lam)
      for (int mu = 0; mu < 4; ++mu)
        f3[q] += g.eps_low_x[a][b][s][mu] * g.g_up[mu][lam] * T4[lam];
  }
  out.add("form3", f3);
  // 4-form row: -eps_{0123}(x) times the pseudoscalar row
  out.add("form4", {-g.det_e * rs.at("pseudoscalar")[0]});
  return out;
}

ResidualSet tensor_to_pseudo(const GeometryAt& g, const ResidualSet& rs) {
  ResidualSet out;
  out.name = rs.name + "_pseudo";
  out.point = rs.point;
  for (const auto& e : rs.entries) {
    std::vector<cplx> vals = e.second;
    if (e.first == "pseudoscalar" || e.first == "pseudovector")
      for (auto& x : vals) x *= g.jfac;
    out.add(e.first, std::move(vals));
  }
  return out;
}

// ---- symmetry operations ----

MatrixField LorentzGaugeElement::eval_S(const Point& p) const {
  MatrixField out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jet2 e = S[i][j].eval(p);
      out.val.m[i][j] = e.val;
      for (int mu = 0; mu < 4; ++mu) out.d1[mu].m[i][j] = e.d1[mu];
    }
  return out;
}

LorentzGaugeElement make_gauge_element(const GammaBasis& gb, int m, int n,
                                       const FieldExpr& angle) {
  if (m == n || m < 0 || n < 0 || m > 3 || n > 3)
    throw std::invalid_argument("gauge plane must be a pair of distinct indices");
  bool boost = (m == 0 || n == 0);
  MatrixC4 gen = cplx(2.0) * gb.sigma[m][n];  // squares to +1 (boost) or -1

  LorentzGaugeElement ge;
  FieldExpr half = cplx(0.5) * angle;
  FieldExpr ch = boost ? fe_cosh(half) : fe_cos(half);
  FieldExpr sh = boost ? fe_sinh(half) : fe_sin(half);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      FieldExpr e;
      if (i == j) e = ch;
      if (gen.m[i][j] != cplx(0.0)) e = e + gen.m[i][j] * sh;
      ge.S[i][j] = e;
    }

  // calibrate the sign of the vector representation numerically:
  // S^{-1} gamma^a S = L^a_b gamma^b must match one of the two closed forms
  auto closed_L = [&](double th, double sign, double L[4][4]) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) L[i][j] = (i == j) ? 1.0 : 0.0;
    if (boost) {
      L[m][m] = L[n][n] = std::cosh(th);
      L[m][n] = L[n][m] = sign * std::sinh(th);
    } else {
      L[m][m] = L[n][n] = std::cos(th);
      L[m][n] = sign * std::sin(th);
      L[n][m] = -sign * std::sin(th);
    }
  };
  const Point probes[3] = {{{0.37, -0.21, 0.44, 0.18}},
                           {{1.1, 0.7, -0.6, 0.9}},
                           {{0.05, -0.85, 0.33, -0.47}}};
  double sign = 1.0;
  for (const Point& pr : probes) {
    Jet2 th = angle.eval(pr);
    if (std::abs(th.val.imag()) > 1e-12)
      throw std::invalid_argument("gauge angle must be real-valued");
    double th0 = th.val.real();
    if (std::abs(boost ? std::sinh(th0) : std::sin(th0)) < 1e-6) continue;
    MatrixC4 Snum = ge.eval_S(pr).val;
    MatrixC4 Sinv = inverse(Snum);
    double Lnum[4][4];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        cplx tr = trace(Sinv * gb.gamma[a] * Snum * (cplx(gb.eta[b]) * gb.gamma[b]));
        Lnum[a][b] = 0.25 * tr.real();
        if (std::abs(tr.imag()) > 1e-9)
          throw std::runtime_error("gauge element: vector rep is not real");
      }
    bool calibrated = false;
    for (double s : {1.0, -1.0}) {
      double Lc[4][4];
      closed_L(th0, s, Lc);
      double err = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          err = std::max(err, std::abs(Lc[i][j] - Lnum[i][j]));
      if (err < 1e-9) {
        sign = s;
        calibrated = true;
        break;
      }
    }
    if (!calibrated)
      throw std::runtime_error(
          "gauge element: vector representation calibration failed");
    break;
  }
  // (an angle vanishing at every probe gives the identity; the sign is moot)

  FieldExpr cth = boost ? fe_cosh(angle) : fe_cos(angle);
  FieldExpr sth = boost ? fe_sinh(angle) : fe_sin(angle);
  FieldExpr one = fe_const(1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ge.L.L[i][j] = (i == j) ? one : FieldExpr();
      ge.Linv.L[i][j] = (i == j) ? one : FieldExpr();
    }
  ge.L.L[m][m] = ge.L.L[n][n] = cth;
  ge.Linv.L[m][m] = ge.Linv.L[n][n] = cth;
  if (boost) {
    ge.L.L[m][n] = ge.L.L[n][m] = cplx(sign) * sth;
    ge.Linv.L[m][n] = ge.Linv.L[n][m] = cplx(-sign) * sth;
  } else {
    ge.L.L[m][n] = cplx(sign) * sth;
    ge.L.L[n][m] = cplx(-sign) * sth;
    ge.Linv.L[m][n] = cplx(-sign) * sth;
    ge.Linv.L[n][m] = cplx(sign) * sth;
  }
  return ge;
}

GaugeTransformed gauge_transform(const TetradChart& chart, const MultipletField& F,
                                 const LorentzGaugeElement& S, const GammaBasis& gb) {
  // the tetrad picks up (L^{-1})^b_a on the frame index; apply_local_lorentz
  // contracts its matrix as e'_{(b)} = M_b^a e_{(a)}, so M is the transpose
  LorentzFieldExpr M;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) M.L[a][b] = S.Linv.L[b][a];
  GaugeTransformed out;
  out.chart = apply_local_lorentz(chart, M, "_gauge");
  out.U = [gb, F, S](const Point& p) {
    MatrixField U = matrix_field_at(gb, F, p);
    MatrixField Sm = S.eval_S(p);
    MatrixC4 St = transpose(Sm.val);
    MatrixField r;
    r.val = Sm.val * U.val * St;
    for (int mu = 0; mu < 4; ++mu)
      r.d1[mu] = Sm.d1[mu] * U.val * St + Sm.val * U.d1[mu] * St +
                 Sm.val * U.val * transpose(Sm.d1[mu]);
    return r;
  };
  return out;
}

GaugeTransformed p_reflection(const TetradChart& chart, const MultipletField& F,
                              const GammaBasis& gb) {
  GaugeTransformed out;
  out.chart = p_reflect_tetrad(chart);
  MatrixC4 P = I_UNIT * gb.gamma[0];
  MatrixC4 Pt = transpose(P);
  out.U = [gb, F, P, Pt](const Point& p) {
    MatrixField U = matrix_field_at(gb, F, p);
    MatrixField r;
    r.val = P * U.val * Pt;
    for (int mu = 0; mu < 4; ++mu) r.d1[mu] = P * U.d1[mu] * Pt;
    return r;
  };
  return out;
}

}  // namespace dkl
