#include "dkl/clifford.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace dkl {

namespace {

MatrixC2 pauli(int k) {
  MatrixC2 r;
  switch (k) {
    case 0: r.m[0][0] = r.m[1][1] = 1.0; break;
    case 1: r.m[0][1] = r.m[1][0] = 1.0; break;
    case 2: r.m[0][1] = -I_UNIT; r.m[1][0] = I_UNIT; break;
    case 3: r.m[0][0] = 1.0; r.m[1][1] = -1.0; break;
    default: throw std::logic_error("pauli index");
  }
  return r;
}

MatrixC4 from_blocks(const MatrixC2& a, const MatrixC2& b,
                     const MatrixC2& c, const MatrixC2& d) {
  MatrixC4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r.m[i][j] = a.m[i][j];
      r.m[i][j + 2] = b.m[i][j];
      r.m[i + 2][j] = c.m[i][j];
      r.m[i + 2][j + 2] = d.m[i][j];
    }
  return r;
}

bool exact_equal(const MatrixC4& a, const MatrixC4& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (a.m[i][j] != b.m[i][j]) return false;
  return true;
}

[[noreturn]] void defect(const std::string& identity) {
  throw std::runtime_error("gamma basis self-check failed: " + identity);
}

void invert16(const cplx gram[16][16], cplx out[16][16]) {
  cplx w[16][32];
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      w[i][j] = gram[i][j];
      w[i][16 + j] = (i == j) ? 1.0 : 0.0;
    }
  for (int c = 0; c < 16; ++c) {
    int piv = c;
    for (int r = c + 1; r < 16; ++r)
      if (std::abs(w[r][c]) > std::abs(w[piv][c])) piv = r;
    if (std::abs(w[piv][c]) < 1e-12) defect("basis16 Gram matrix invertible");
    if (piv != c)
      for (int j = 0; j < 32; ++j) std::swap(w[piv][j], w[c][j]);
    cplx d = w[c][c];
    for (int j = 0; j < 32; ++j) w[c][j] /= d;
    for (int r = 0; r < 16; ++r) {
      if (r == c) continue;
      cplx f = w[r][c];
      for (int j = 0; j < 32; ++j) w[r][j] -= f * w[c][j];
    }
  }
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) out[i][j] = w[i][16 + j];
}

}  // namespace

int epsilon_symbol(int a, int b, int c, int d) {
  if (a < 0 || a > 3 || b < 0 || b > 3 || c < 0 || c > 3 || d < 0 || d > 3)
    throw std::out_of_range("epsilon_symbol: index outside 0..3");
  int idx[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

GammaBasis build_basis() {
  GammaBasis gb;
  MatrixC2 z2;

  for (int a = 0; a < 4; ++a) {
    gb.sig2[a] = pauli(a);
    gb.sigbar2[a] = (a == 0) ? pauli(0) : cplx(-1.0) * pauli(a);
    gb.gamma[a] = from_blocks(z2, gb.sig2[a], gb.sigbar2[a], z2);
  }

  // anticommutation {g^a, g^b} = 2 eta^{ab}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MatrixC4 anti = gb.gamma[a] * gb.gamma[b] + gb.gamma[b] * gb.gamma[a];
      MatrixC4 want = (a == b) ? cplx(2.0 * gb.eta[a]) * MatrixC4::identity()
                               : MatrixC4{};
      if (!exact_equal(anti, want)) defect("gamma anticommutation");
    }

  gb.gamma5 = I_UNIT * (gb.gamma[0] * gb.gamma[1] * gb.gamma[2] * gb.gamma[3]);

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      gb.sigma[a][b] = cplx(0.25) * (gb.gamma[a] * gb.gamma[b] - gb.gamma[b] * gb.gamma[a]);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          gb.Sig[a][b].m[i][j] = gb.sigma[a][b].m[i][j];
          gb.Sigbar[a][b].m[i][j] = gb.sigma[a][b].m[i + 2][j + 2];
        }
    }

  gb.eps2 = I_UNIT * pauli(2);
  gb.eps2dot = gb.eps2;
  gb.E = from_blocks(gb.eps2, z2, z2, cplx(-1.0) * gb.eps2);
  gb.Einv = inverse(gb.E);

  // (2.3b) suite, exact
  if (!exact_equal(gb.E * gb.E, -MatrixC4::identity())) defect("E^2 = -1");
  if (!exact_equal(transpose(gb.E), -gb.E)) defect("E~ = -E");
  if (trace(gb.E) != cplx(0.0)) defect("Sp E = 0");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (!exact_equal(transpose(gb.sigma[a][b]) * gb.E, -(gb.E * gb.sigma[a][b])))
        defect("sigma~ E = -E sigma");

  // expansion basis
  gb.basis16[0] = -I_UNIT * gb.Einv;
  for (int l = 0; l < 4; ++l) gb.basis16[1 + l] = gb.gamma[l] * gb.Einv;
  for (int k = 0; k < 6; ++k)
    gb.basis16[5 + k] = I_UNIT * (gb.sigma[kTensorPairs[k][0]][kTensorPairs[k][1]] * gb.Einv);
  gb.basis16[11] = gb.gamma5 * gb.Einv;
  for (int l = 0; l < 4; ++l)
    gb.basis16[12 + l] = I_UNIT * (gb.gamma[l] * (gb.gamma5 * gb.Einv));

  cplx gram[16][16];
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      gram[i][j] = trace(dagger(gb.basis16[i]) * gb.basis16[j]);
  invert16(gram, gb.gram_inv);

  return gb;
}

MatrixC4 expand_multiplet(const GammaBasis& gb, const LorentzMultiplet& m) {
  MatrixC4 W = (-I_UNIT * m.s) * MatrixC4::identity() + m.ps * gb.gamma5;
  for (int l = 0; l < 4; ++l) {
    W = W + m.v[l] * gb.gamma[l];
    W = W + (I_UNIT * m.pv[l]) * (gb.gamma[l] * gb.gamma5);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      W = W + (I_UNIT * m.t[a][b]) * gb.sigma[a][b];
  return W * gb.Einv;
}

LorentzMultiplet project_multiplet(const GammaBasis& gb, const MatrixC4& U) {
  cplx rhs[16];
  for (int i = 0; i < 16; ++i) rhs[i] = trace(dagger(gb.basis16[i]) * U);
  cplx a[16];
  for (int i = 0; i < 16; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < 16; ++j) s += gb.gram_inv[i][j] * rhs[j];
    a[i] = s;
  }
  LorentzMultiplet m;
  m.s = a[0];
  for (int l = 0; l < 4; ++l) m.v[l] = a[1 + l];
  for (int k = 0; k < 6; ++k) {
    // basis16 holds one matrix per independent pair; the expansion sums both
    // orderings, hence the factor 1/2 per component.
    m.t[kTensorPairs[k][0]][kTensorPairs[k][1]] = a[5 + k] * 0.5;
    m.t[kTensorPairs[k][1]][kTensorPairs[k][0]] = -a[5 + k] * 0.5;
  }
  m.ps = a[11];
  for (int l = 0; l < 4; ++l) m.pv[l] = a[12 + l];
  return m;
}

LorentzMultiplet project_closed_form(const GammaBasis& gb, const MatrixC4& U) {
  LorentzMultiplet m;
  m.s = (-1.0 / (4.0 * I_UNIT)) * trace(gb.E * U);
  m.ps = 0.25 * trace(gb.E * (gb.gamma5 * U));
  for (int l = 0; l < 4; ++l) {
    MatrixC4 gl = cplx(gb.eta[l]) * gb.gamma[l];  // index-lowered gamma_l
    m.v[l] = 0.25 * trace(gb.E * (gl * U));
    m.pv[l] = (1.0 / (4.0 * I_UNIT)) * trace(gb.E * (gb.gamma5 * (gl * U)));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MatrixC4 slow = cplx(gb.eta[a] * gb.eta[b]) * gb.sigma[a][b];
      m.t[a][b] = (-1.0 / (2.0 * I_UNIT)) * trace(gb.E * (slow * U));
    }
  return m;
}

SpinorBlocks split_blocks(const MatrixC4& U) {
  SpinorBlocks b;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      b.xi.m[i][j] = U.m[i][j];
      b.delta.m[i][j] = U.m[i][j + 2];
      b.h.m[i][j] = U.m[i + 2][j];
      b.eta_blk.m[i][j] = U.m[i + 2][j + 2];
    }
  return b;
}

MatrixC4 reassemble_blocks(const SpinorBlocks& b) {
  return from_blocks(b.xi, b.delta, b.h, b.eta_blk);
}

LorentzMultiplet block_inverse_relations(const GammaBasis& gb, const SpinorBlocks& b) {
  LorentzMultiplet m;
  MatrixC2 eps_inv = inverse(gb.eps2);
  MatrixC2 epsdot_inv = inverse(gb.eps2dot);

  // 1/2 Sp[eps xi] = -i s - ps ;  1/2 Sp[epsdot^-1 eta] = -i s + ps
  cplx a1 = 0.5 * trace(gb.eps2 * b.xi);
  cplx a2 = 0.5 * trace(epsdot_inv * b.eta_blk);
  m.s = 0.5 * I_UNIT * (a1 + a2);
  m.ps = 0.5 * (a2 - a1);

  // 1/2 Sp[epsdot^-1 sigma^l Delta] = v_l + i pv_l  (upper-index sigma)
  // 1/2 Sp[eps sigbar^l H]          = v_l - i pv_l
  for (int l = 0; l < 4; ++l) {
    cplx vp = 0.5 * trace(epsdot_inv * (gb.sig2[l] * b.delta));
    cplx vm = 0.5 * trace(gb.eps2 * (gb.sigbar2[l] * b.h));
    m.v[l] = 0.5 * (vp + vm);
    m.pv[l] = 0.5 * (vp - vm) / I_UNIT;
  }

  // tensor: Sp[eps Sigma^{kl} xi]      = -i P^{kl} - 1/2 eps^{klmn} P_mn
  //         Sp[epsdot^-1 Sigbar^{kl} eta] = -i P^{kl} + 1/2 eps^{klmn} P_mn
  // so the dual terms cancel in the average; P^{kl} has both indices upper,
  // lower back with eta.
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      if (k == l) continue;
      cplx f1 = trace(gb.eps2 * (gb.Sig[k][l] * b.xi));
      cplx f2 = trace(epsdot_inv * (gb.Sigbar[k][l] * b.eta_blk));
      cplx p_up = 0.5 * I_UNIT * (f1 + f2);
      m.t[k][l] = gb.eta[k] * gb.eta[l] * p_up;
    }
  return m;
}

CalibrationConstants calibration_constants(const GammaBasis& gb) {
  LorentzMultiplet probe;
  probe.s = cplx(0.7, -0.3);
  probe.ps = cplx(-0.2, 0.9);
  for (int l = 0; l < 4; ++l) {
    probe.v[l] = cplx(0.1 * (l + 1), -0.05 * l);
    probe.pv[l] = cplx(-0.3 + 0.2 * l, 0.4);
  }
  for (int k = 0; k < 6; ++k) {
    cplx val(0.25 * (k + 1), -0.15 * (k + 2));
    probe.t[kTensorPairs[k][0]][kTensorPairs[k][1]] = val;
    probe.t[kTensorPairs[k][1]][kTensorPairs[k][0]] = -val;
  }
  MatrixC4 U = expand_multiplet(gb, probe);
  LorentzMultiplet g = project_multiplet(gb, U);
  LorentzMultiplet c = project_closed_form(gb, U);
  CalibrationConstants cc;
  cc.s = c.s / g.s;
  cc.v = c.v[1] / g.v[1];
  cc.t = c.t[0][1] / g.t[0][1];
  cc.ps = c.ps / g.ps;
  cc.pv = c.pv[2] / g.pv[2];
  return cc;
}

double multiplet_dist(const LorentzMultiplet& a, const LorentzMultiplet& b) {
  double r = std::abs(a.s - b.s);
  r = std::max(r, std::abs(a.ps - b.ps));
  for (int l = 0; l < 4; ++l) {
    r = std::max(r, std::abs(a.v[l] - b.v[l]));
    r = std::max(r, std::abs(a.pv[l] - b.pv[l]));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(a.t[i][j] - b.t[i][j]));
  return r;
}

}  // namespace dkl
