// Fixed finite algebra: Weyl-basis Dirac matrices, the metrical bispinor
// matrix E, the 16-element expansion basis with its trace projectors, and the
// 2-spinor block decomposition.
//
// Conventions (pinned once, everything downstream derives from them):
//   eta = diag(+1,-1,-1,-1), sigma^a = (1, s^k), sigbar^a = (1, -s^k),
//   gamma^a = [[0, sigma^a], [sigbar^a, 0]], sigma^{ab} = 1/4 [g^a, g^b],
//   gamma5 = i g0 g1 g2 g3 = diag(-1,-1,+1,+1),
//   E = blockdiag(i s2, -i s2), eps^{0123} = +1.
#pragma once

#include <array>
#include <string>

#include "dkl/matrix.hpp"

namespace dkl {

// Lorentz-frame multiplet {Psi, Psi_l, Psi~, Psi~_l, Psi_mn}.
struct LorentzMultiplet {
  cplx s{};        // scalar Psi
  cplx v[4]{};     // vector Psi_l
  cplx ps{};       // pseudoscalar Psi~
  cplx pv[4]{};    // pseudovector Psi~_l
  cplx t[4][4]{};  // antisymmetric tensor Psi_mn
};

// 2-spinor blocks of the 4x4 matrix: U = [[xi, delta], [h, eta_blk]].
struct SpinorBlocks {
  MatrixC2 xi, delta, h, eta_blk;
};

struct GammaBasis {
  MatrixC4 gamma[4];
  MatrixC4 gamma5;
  MatrixC4 sigma[4][4];   // sigma^{mn} = 1/4 [g^m, g^n]
  MatrixC4 E, Einv;
  MatrixC2 sig2[4];       // sigma^a
  MatrixC2 sigbar2[4];    // sigbar^a
  MatrixC2 Sig[4][4];     // upper-left block of sigma^{mn}
  MatrixC2 Sigbar[4][4];  // lower-right block of sigma^{mn}
  MatrixC2 eps2, eps2dot; // 2-spinor metrics (both i s2 in this basis)
  double eta[4] = {1.0, -1.0, -1.0, -1.0};
  // {-i*1, g^l, i sigma^{mn}, g^5, i g^l g^5} * E^{-1}, order:
  // [S, V0..V3, T01,T02,T03,T12,T13,T23, P, A0..A3]
  MatrixC4 basis16[16];
  cplx gram_inv[16][16];  // inverse Gram matrix under <A,B> = tr(A^dag B)
};

// Index pairs enumerating the independent tensor components, fixed order.
inline constexpr int kTensorPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                           {1, 2}, {1, 3}, {2, 3}};

// Totally antisymmetric symbol, eps^{0123} = +1.
int epsilon_symbol(int a, int b, int c, int d);

// Builds the tables and runs the construction self-check; any violated
// identity is a fatal defect (throws with the identity name).
GammaBasis build_basis();

MatrixC4 expand_multiplet(const GammaBasis& gb, const LorentzMultiplet& m);

// Projection by the inverse Gram matrix of basis16 (always correct).
LorentzMultiplet project_multiplet(const GammaBasis& gb, const MatrixC4& U);

// Projection by the closed-form traces; used to calibrate the textbook
// normalization constants against the Gram projection.
LorentzMultiplet project_closed_form(const GammaBasis& gb, const MatrixC4& U);

SpinorBlocks split_blocks(const MatrixC4& U);
MatrixC4 reassemble_blocks(const SpinorBlocks& b);

// Recovers the multiplet from blocks by the 2-spinor trace formulas.
LorentzMultiplet block_inverse_relations(const GammaBasis& gb, const SpinorBlocks& b);

// Per-component ratio closed-form/Gram on a fixed probe multiplet (all 1.0
// in this basis); recorded in the run report.
struct CalibrationConstants {
  cplx s, v, t, ps, pv;
};
CalibrationConstants calibration_constants(const GammaBasis& gb);

double multiplet_dist(const LorentzMultiplet& a, const LorentzMultiplet& b);

}  // namespace dkl
