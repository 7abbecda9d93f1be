#include "dkl/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkl {

namespace {

// coordinate covector Psi_alpha = e^{(a)}_alpha Psi_a with first partials,
// packed for covariant_derivative
void coord_covector(const GeometryAt& g, const Jet2 va[4], std::vector<cplx>& val,
                    std::vector<cplx>& d1) {
  val.assign(4, 0.0);
  d1.assign(16, 0.0);
  for (int al = 0; al < 4; ++al)
    for (int a = 0; a < 4; ++a) {
      val[al] += g.e_down[a][al] * va[a].val;
      for (int mu = 0; mu < 4; ++mu)
        d1[mu * 4 + al] +=
            g.de_down[mu][a][al] * va[a].val + g.e_down[a][al] * va[a].d1[mu];
    }
}

void coord_2tensor(const GeometryAt& g, const Jet2 t[4][4], std::vector<cplx>& val,
                   std::vector<cplx>& d1) {
  val.assign(16, 0.0);
  d1.assign(64, 0.0);
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b) continue;
          val[al * 4 + be] += g.e_down[a][al] * g.e_down[b][be] * t[a][b].val;
          for (int mu = 0; mu < 4; ++mu)
            d1[mu * 16 + al * 4 + be] +=
                g.de_down[mu][a][al] * g.e_down[b][be] * t[a][b].val +
                g.e_down[a][al] * g.de_down[mu][b][be] * t[a][b].val +
                g.e_down[a][al] * g.e_down[b][be] * t[a][b].d1[mu];
        }
}

void eval_frame_vector(const MultipletField& F, bool tilde, const Point& p,
                       Jet2 out[4]) {
  for (int i = 0; i < 4; ++i) out[i] = (tilde ? F.pv[i] : F.v[i]).eval(p);
}

void eval_frame_tensor(const MultipletField& F, const Point& p, Jet2 out[4][4]) {
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out[i][k] = Jet2{};
  for (int k = 0; k < 6; ++k) {
    Jet2 v = F.t_pairs[k].eval(p);
    out[kTensorPairs[k][0]][kTensorPairs[k][1]] = v;
    out[kTensorPairs[k][1]][kTensorPairs[k][0]] = -v;
  }
}

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

void require_zero(const FieldExpr& f, const char* what) {
  if (!f.is_zero())
    throw std::invalid_argument(std::string("field is not constrained: ") + what +
                                " must vanish in this sector");
}

}  // namespace

std::string sector_name(SectorTag tag) {
  switch (tag) {
    case SectorTag::S0: return "S0";
    case SectorTag::S0tilde: return "S0tilde";
    case SectorTag::S1: return "S1";
    case SectorTag::S1tilde: return "S1tilde";
  }
  throw std::invalid_argument("bad sector tag");
}

MultipletField apply_sector(const MultipletField& F, SectorTag tag) {
  MultipletField out;
  out.mass = F.mass;
  switch (tag) {
    case SectorTag::S0:
      out.s = F.s;
      for (int i = 0; i < 4; ++i) out.v[i] = F.v[i];
      break;
    case SectorTag::S0tilde:
      out.ps = F.ps;
      for (int i = 0; i < 4; ++i) out.pv[i] = F.pv[i];
      break;
    case SectorTag::S1:
      for (int i = 0; i < 4; ++i) out.v[i] = F.v[i];
      for (int i = 0; i < 6; ++i) out.t_pairs[i] = F.t_pairs[i];
      break;
    case SectorTag::S1tilde:
      for (int i = 0; i < 4; ++i) out.pv[i] = F.pv[i];
      for (int i = 0; i < 6; ++i) out.t_pairs[i] = F.t_pairs[i];
      break;
  }
  return out;
}

double sector_block_violation(const GammaBasis& gb, const MatrixC4& U,
                              SectorTag tag) {
  (void)gb;
  SpinorBlocks b = split_blocks(U);
  double v = 0.0;
  bool scalar_sector = (tag == SectorTag::S0 || tag == SectorTag::S0tilde);
  bool plus = (tag == SectorTag::S0 || tag == SectorTag::S1);
  // delta^t = +h (untilded) or -h (tilded)
  v = std::max(v, norm_inf(transpose(b.delta) - cplx(plus ? 1.0 : -1.0) * b.h));
  if (scalar_sector) {
    // xi, eta antisymmetric; xi = -eta (S0) or xi = +eta (S0tilde)
    v = std::max(v, norm_inf(transpose(b.xi) + b.xi));
    v = std::max(v, norm_inf(transpose(b.eta_blk) + b.eta_blk));
    v = std::max(v, norm_inf(b.xi - cplx(tag == SectorTag::S0 ? -1.0 : 1.0) *
                                        b.eta_blk));
  } else {
    // xi, eta symmetric
    v = std::max(v, norm_inf(transpose(b.xi) - b.xi));
    v = std::max(v, norm_inf(transpose(b.eta_blk) - b.eta_blk));
  }
  return v;
}

ResidualSet reduced_residual(const TetradChart& chart, const MultipletField& F,
                             SectorTag tag, const Point& p, const GammaBasis& gb) {
  switch (tag) {
    case SectorTag::S0:
      require_zero(F.ps, "Psi~");
      for (int i = 0; i < 4; ++i) require_zero(F.pv[i], "Psi~_l");
      for (int i = 0; i < 6; ++i) require_zero(F.t_pairs[i], "Psi_mn");
      break;
    case SectorTag::S0tilde:
      require_zero(F.s, "Psi");
      for (int i = 0; i < 4; ++i) require_zero(F.v[i], "Psi_l");
      for (int i = 0; i < 6; ++i) require_zero(F.t_pairs[i], "Psi_mn");
      break;
    case SectorTag::S1:
      require_zero(F.s, "Psi");
      require_zero(F.ps, "Psi~");
      for (int i = 0; i < 4; ++i) require_zero(F.pv[i], "Psi~_l");
      break;
    case SectorTag::S1tilde:
      require_zero(F.s, "Psi");
      require_zero(F.ps, "Psi~");
      for (int i = 0; i < 4; ++i) require_zero(F.v[i], "Psi_l");
      break;
  }

  GeometryAt g = geometry_at(chart, p, gb);
  double m = F.mass;
  ResidualSet rs;
  rs.name = "reduced_" + sector_name(tag);
  rs.point = p;

  if (tag == SectorTag::S0 || tag == SectorTag::S0tilde) {
    bool tilde = (tag == SectorTag::S0tilde);
    Jet2 sc = (tilde ? F.ps : F.s).eval(p);
    Jet2 va[4];
    eval_frame_vector(F, tilde, p, va);
    std::vector<cplx> val, d1;
    coord_covector(g, va, val, d1);
    auto cd = covariant_derivative(g, 1, val, d1);

    cplx div = m * sc.val;
    for (int al = 0; al < 4; ++al)
      for (int mu = 0; mu < 4; ++mu) div += g.g_up[al][mu] * cd[mu * 4 + al];
    std::vector<cplx> grad(4);
    for (int al = 0; al < 4; ++al) grad[al] = sc.d1[al] - m * val[al];

    std::vector<cplx> curl(6);
    if (!tilde) {
      for (int q = 0; q < 6; ++q) {
        int al = kTensorPairs[q][0], be = kTensorPairs[q][1];
        curl[q] = cd[al * 4 + be] - cd[be * 4 + al];
      }
      rs.add("scalar", {div});
      rs.add("vector", grad);
    } else {
      double e22[4][4][4][4];
      raise_last2(g, g.eps_low_x, e22);
      for (int q = 0; q < 6; ++q) {
        int al = kTensorPairs[q][0], be = kTensorPairs[q][1];
        cplx r = 0.0;
        for (int ro = 0; ro < 4; ++ro)
          for (int s = 0; s < 4; ++s) r -= e22[al][be][ro][s] * cd[ro * 4 + s];
        curl[q] = r;
      }
      rs.add("pseudoscalar", {div});
      rs.add("pseudovector", grad);
    }
    // the third equation of the full system: a pure identity on this sector
    rs.add("tensor", curl);
    return rs;
  }

  // vector-tensor sectors
  bool tilde = (tag == SectorTag::S1tilde);
  Jet2 va[4];
  eval_frame_vector(F, tilde, p, va);
  Jet2 tf[4][4];
  eval_frame_tensor(F, p, tf);
  std::vector<cplx> vval, vd1, tval, td1;
  coord_covector(g, va, vval, vd1);
  coord_2tensor(g, tf, tval, td1);
  auto cdv = covariant_derivative(g, 1, vval, vd1);
  auto cdt = covariant_derivative(g, 2, tval, td1);
  double e13[4][4][4][4], e22[4][4][4][4];
  raise_last3(g, g.eps_low_x, e13);
  raise_last2(g, g.eps_low_x, e22);

  // divergence of the 2-form on its second index
  std::vector<cplx> divt(4, 0.0);
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int mu = 0; mu < 4; ++mu)
        divt[al] += g.g_up[be][mu] * cdt[mu * 16 + al * 4 + be];
  // eps-contracted derivative of the 2-form
  std::vector<cplx> epst(4, 0.0);
  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          epst[al] += 0.5 * e13[al][be][r][s] * cdt[be * 16 + r * 4 + s];
  // divergence of the covector
  cplx divv = 0.0;
  for (int al = 0; al < 4; ++al)
    for (int mu = 0; mu < 4; ++mu) divv += g.g_up[al][mu] * cdv[mu * 4 + al];

  std::vector<cplx> ten(6);
  for (int q = 0; q < 6; ++q) {
    int al = kTensorPairs[q][0], be = kTensorPairs[q][1];
    if (!tilde) {
      ten[q] = cdv[al * 4 + be] - cdv[be * 4 + al] - m * tval[al * 4 + be];
    } else {
      cplx r = -m * tval[al * 4 + be];
      for (int ro = 0; ro < 4; ++ro)
        for (int s = 0; s < 4; ++s) r -= e22[al][be][ro][s] * cdv[ro * 4 + s];
      ten[q] = r;
    }
  }

  if (!tilde) {
    std::vector<cplx> vec(4);
    for (int al = 0; al < 4; ++al) vec[al] = divt[al] - m * vval[al];
    rs.add("vector", vec);
    rs.add("tensor", ten);
    // identity rows of the full system on this sector
    rs.add("scalar", {divv});
    rs.add("pseudovector", epst);
  } else {
    std::vector<cplx> pvec(4);
    for (int al = 0; al < 4; ++al) pvec[al] = epst[al] - m * vval[al];
    rs.add("pseudovector", pvec);
    rs.add("tensor", ten);
    rs.add("pseudoscalar", {divv});
    rs.add("vector", divt);
  }
  return rs;
}

std::vector<IdentityCheckReport> sector_identity_checks(const TetradChart& chart,
                                                        SectorTag tag,
                                                        std::uint64_t seed,
                                                        const Point& p,
                                                        const GammaBasis& gb) {
  GeometryAt g = geometry_at(chart, p, gb);
  std::vector<IdentityCheckReport> out;

  auto finish = [&out](std::string name, double gap, double mag, double tol) {
    IdentityCheckReport r;
    r.name = std::move(name);
    r.direct_vs_curvature = gap;
    r.magnitude = mag;
    r.tolerance = tol;
    r.pass = gap < tol && mag < tol;
    out.push_back(r);
  };

  if (tag == SectorTag::S0 || tag == SectorTag::S0tilde) {
    // the curl of a gradient: nabla_mu nabla_nu psi is symmetric
    Jet2 sc = random_polynomial(seed * 31 + 1, 2, 1.0).eval(p);
    std::vector<cplx> val{sc.val}, d1(4), d2(16);
    for (int mu = 0; mu < 4; ++mu) {
      d1[mu] = sc.d1[mu];
      for (int nu = 0; nu < 4; ++nu) d2[mu * 4 + nu] = sc.d2[mu][nu];
    }
    auto D = second_covariant_derivative(g, 0, val, d1, d2);
    double mag = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        mag = std::max(mag, std::abs(D[mu * 4 + nu] - D[nu * 4 + mu]));
    finish("curl_of_gradient", 0.0, mag, 1e-9);
    return out;
  }

  // random antisymmetric coordinate 2-form with exact second partials
  cplx tv[4][4]{};
  std::vector<cplx> val(16, 0.0), d1(64, 0.0), d2(256, 0.0);
  for (int q = 0; q < 6; ++q) {
    Jet2 j = random_polynomial(seed * 31 + 2 + q, 2, 1.0).eval(p);
    int a = kTensorPairs[q][0], b = kTensorPairs[q][1];
    tv[a][b] = j.val;
    tv[b][a] = -j.val;
    val[a * 4 + b] = j.val;
    val[b * 4 + a] = -j.val;
    for (int mu = 0; mu < 4; ++mu) {
      d1[mu * 16 + a * 4 + b] = j.d1[mu];
      d1[mu * 16 + b * 4 + a] = -j.d1[mu];
      for (int nu = 0; nu < 4; ++nu) {
        d2[(mu * 4 + nu) * 16 + a * 4 + b] = j.d2[mu][nu];
        d2[(mu * 4 + nu) * 16 + b * 4 + a] = -j.d2[mu][nu];
      }
    }
  }
  auto D2 = second_covariant_derivative(g, 2, val, d1, d2);

  // random covector with exact second partials
  cplx wv[4];
  std::vector<cplx> wval(4), wd1(16), wd2(64);
  for (int al = 0; al < 4; ++al) {
    Jet2 j = random_polynomial(seed * 31 + 11 + al, 2, 1.0).eval(p);
    wv[al] = j.val;
    wval[al] = j.val;
    for (int mu = 0; mu < 4; ++mu) {
      wd1[mu * 4 + al] = j.d1[mu];
      for (int nu = 0; nu < 4; ++nu) wd2[(mu * 4 + nu) * 4 + al] = j.d2[mu][nu];
    }
  }
  auto DW = second_covariant_derivative(g, 1, wval, wd1, wd2);

  double e13[4][4][4][4], e22[4][4][4][4];
  raise_last3(g, g.eps_low_x, e13);
  raise_last2(g, g.eps_low_x, e22);

  if (tag == SectorTag::S1) {
    // double divergence of the 2-form: the commutator contracts Ricci
    // against the antisymmetric field and vanishes
    cplx direct = 0.0, curv = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        for (int al = 0; al < 4; ++al)
          for (int be = 0; be < 4; ++be) {
            double gg = g.g_up[al][mu] * g.g_up[be][nu];
            direct += 0.5 * gg *
                      (D2[(mu * 4 + nu) * 16 + al * 4 + be] -
                       D2[(nu * 4 + mu) * 16 + al * 4 + be]);
            for (int lam = 0; lam < 4; ++lam)
              curv += 0.5 * gg *
                      (tv[lam][be] * g.riemann[lam][al][nu][mu] +
                       tv[al][lam] * g.riemann[lam][be][nu][mu]);
          }
    finish("double_divergence_2form", std::abs(direct - curv),
           std::max(std::abs(direct), std::abs(curv)), 1e-7);

    // eps-contracted second derivative of a curl: cyclic Riemann identity
    double gap = 0.0, mag = 0.0;
    for (int al = 0; al < 4; ++al) {
      cplx direct1 = 0.0, curv1 = 0.0;
      for (int be = 0; be < 4; ++be)
        for (int r = 0; r < 4; ++r)
          for (int s = 0; s < 4; ++s) {
            direct1 += 2.0 * e13[al][be][r][s] * DW[(be * 4 + r) * 4 + s];
            for (int nu = 0; nu < 4; ++nu)
              curv1 += e13[al][be][r][s] * wv[nu] * g.riemann[nu][s][r][be];
          }
      gap = std::max(gap, std::abs(direct1 - curv1));
      mag = std::max({mag, std::abs(direct1), std::abs(curv1)});
    }
    finish("eps_curl_bianchi", gap, mag, 1e-7);
    return out;
  }

  // S1tilde
  {
    // divergence of the eps-contracted 2-form derivative
    cplx direct = 0.0, curv = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int be = 0; be < 4; ++be)
        for (int r = 0; r < 4; ++r)
          for (int s = 0; s < 4; ++s) {
            direct += g.eps_x[mu][be][r][s] * D2[(mu * 4 + be) * 16 + r * 4 + s];
            for (int lam = 0; lam < 4; ++lam)
              curv += 0.5 * g.eps_x[mu][be][r][s] *
                      (tv[lam][s] * g.riemann[lam][r][be][mu] +
                       tv[r][lam] * g.riemann[lam][s][be][mu]);
          }
    finish("divergence_eps_2form", std::abs(direct - curv),
           std::max(std::abs(direct), std::abs(curv)), 1e-7);

    // divergence of the eps-contracted covector curl
    double gap = 0.0, mag = 0.0;
    for (int al = 0; al < 4; ++al) {
      cplx direct1 = 0.0, curv1 = 0.0;
      for (int be = 0; be < 4; ++be)
        for (int mu = 0; mu < 4; ++mu)
          for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) {
              double w = g.g_up[be][mu] * e22[al][be][r][s];
              direct1 += w * DW[(mu * 4 + r) * 4 + s];
              for (int nu = 0; nu < 4; ++nu)
                curv1 += 0.5 * w * wv[nu] * g.riemann[nu][s][r][mu];
            }
      gap = std::max(gap, std::abs(direct1 - curv1));
      mag = std::max({mag, std::abs(direct1), std::abs(curv1)});
    }
    finish("divergence_eps_curl", gap, mag, 1e-7);
  }
  return out;
}

double s1_rank_structure_violation(const GammaBasis& gb, const MatrixC4& U) {
  SpinorBlocks b = split_blocks(U);
  // the three symmetric generators sigma^k eps2, orthogonal with norm^2 = 2
  MatrixC2 gen[3];
  for (int k = 0; k < 3; ++k) gen[k] = gb.sig2[k + 1] * gb.eps2;
  auto recon_err = [&](const MatrixC2& X) {
    MatrixC2 rec;
    for (int k = 0; k < 3; ++k) {
      cplx coef = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) coef += std::conj(gen[k].m[i][j]) * X.m[i][j];
      rec = rec + (coef / 2.0) * gen[k];
    }
    return norm_inf(rec - X);
  };
  return std::max(recon_err(b.xi), recon_err(b.eta_blk));
}

}  // namespace dkl
