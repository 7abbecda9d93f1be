#include <cmath>

#include "doctest.h"
#include "dkl/clifford.hpp"
#include "util.hpp"

using namespace dkl;
using dkl_test::random_multiplet;
using dkl_test::rel_err;

namespace {
const GammaBasis& basis() {
  static GammaBasis gb = build_basis();
  return gb;
}
}  // namespace

TEST_CASE("epsilon symbol orientation and antisymmetry") {
  CHECK(epsilon_symbol(0, 1, 2, 3) == 1);
  CHECK(epsilon_symbol(1, 0, 2, 3) == -1);
  CHECK(epsilon_symbol(0, 0, 2, 3) == 0);
  CHECK(epsilon_symbol(3, 2, 1, 0) == 1);
}

TEST_CASE("metrical bispinor matrix identities") {
  const GammaBasis& gb = basis();
  MatrixC4 E2 = gb.E * gb.E;
  MatrixC4 minus_id = cplx(-1.0) * MatrixC4::identity();
  CHECK(norm_inf(E2 - minus_id) == 0.0);
  CHECK(trace(gb.E) == cplx(0.0));
  CHECK(norm_inf(transpose(gb.E) + gb.E) == 0.0);
  // sigma~^{ab} E = -E sigma^{ab} for all independent pairs
  for (auto& pr : kTensorPairs) {
    MatrixC4 lhs = transpose(gb.sigma[pr[0]][pr[1]]) * gb.E;
    MatrixC4 rhs = cplx(-1.0) * (gb.E * gb.sigma[pr[0]][pr[1]]);
    CHECK(norm_inf(lhs - rhs) == 0.0);
  }
}

TEST_CASE("gamma anticommutation") {
  const GammaBasis& gb = basis();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      MatrixC4 anti = gb.gamma[a] * gb.gamma[b] + gb.gamma[b] * gb.gamma[a];
      double want = (a == b) ? 2.0 * gb.eta[a] : 0.0;
      CHECK(norm_inf(anti - cplx(want) * MatrixC4::identity()) == 0.0);
    }
  // gamma^1 gamma^1 = -1
  MatrixC4 g11 = gb.gamma[1] * gb.gamma[1];
  CHECK(norm_inf(g11 + MatrixC4::identity()) == 0.0);
}

TEST_CASE("trace formulas used by the projections") {
  const GammaBasis& gb = basis();
  // trace(gamma^c gamma^l) = 4 eta^{cl}
  for (int c = 0; c < 4; ++c)
    for (int l = 0; l < 4; ++l) {
      cplx tr = trace(gb.gamma[c] * gb.gamma[l]);
      CHECK(tr == cplx(c == l ? 4.0 * gb.eta[c] : 0.0));
    }
  // trace(gamma^c sigma^{ab} gamma^l gamma^5) = -2 i eps^{abcl}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int l = 0; l < 4; ++l) {
          cplx tr = trace(gb.gamma[c] * gb.sigma[a][b] * gb.gamma[l] * gb.gamma5);
          cplx want = cplx(0.0, -2.0) * cplx(double(epsilon_symbol(a, b, c, l)));
          CHECK(std::abs(tr - want) == 0.0);
        }
}

TEST_CASE("expand/project round trip is exact") {
  const GammaBasis& gb = basis();
  LorentzMultiplet m = random_multiplet(2024);
  MatrixC4 U = expand_multiplet(gb, m);
  LorentzMultiplet back = project_multiplet(gb, U);
  CHECK(multiplet_dist(m, back) < 1e-13);

  // completeness: expand(project(U)) = U for an arbitrary matrix
  SplitMix64 rng(99);
  MatrixC4 A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A.m[i][j] = dkl_test::random_cplx(rng);
  MatrixC4 A2 = expand_multiplet(gb, project_multiplet(gb, A));
  CHECK(norm_inf(A2 - A) < 1e-13);
}

TEST_CASE("single-component expansions read off the basis") {
  const GammaBasis& gb = basis();
  LorentzMultiplet m;
  m.s = I_UNIT;  // only Psi = i -> U = (-i * i) E^{-1} = E^{-1}
  MatrixC4 U = expand_multiplet(gb, m);
  CHECK(norm_inf(U - gb.Einv) == 0.0);

  LorentzMultiplet v2;
  v2.v[2] = 1.0;  // U = gamma^2 E^{-1}
  MatrixC4 Uv = expand_multiplet(gb, v2);
  LorentzMultiplet back = project_multiplet(gb, Uv);
  CHECK(std::abs(back.v[2] - cplx(1.0)) < 1e-14);
  CHECK(std::abs(back.s) + std::abs(back.ps) < 1e-14);
  CHECK(std::abs(back.v[0]) + std::abs(back.v[1]) + std::abs(back.v[3]) < 1e-14);
}

TEST_CASE("closed-form projection constants are unity") {
  const GammaBasis& gb = basis();
  CalibrationConstants cc = calibration_constants(gb);
  CHECK(std::abs(cc.s - cplx(1.0)) < 1e-13);
  CHECK(std::abs(cc.v - cplx(1.0)) < 1e-13);
  CHECK(std::abs(cc.t - cplx(1.0)) < 1e-13);
  CHECK(std::abs(cc.ps - cplx(1.0)) < 1e-13);
  CHECK(std::abs(cc.pv - cplx(1.0)) < 1e-13);

  LorentzMultiplet m = random_multiplet(7);
  MatrixC4 U = expand_multiplet(gb, m);
  CHECK(multiplet_dist(project_closed_form(gb, U), project_multiplet(gb, U)) < 1e-13);
}

TEST_CASE("block split and reassembly") {
  const GammaBasis& gb = basis();
  LorentzMultiplet m = random_multiplet(31);
  MatrixC4 U = expand_multiplet(gb, m);
  SpinorBlocks b = split_blocks(U);
  CHECK(norm_inf(reassemble_blocks(b) - U) == 0.0);

  // trace recovery from the 2-spinor blocks
  LorentzMultiplet rec = block_inverse_relations(gb, b);
  CHECK(multiplet_dist(rec, m) < 1e-13);
}

TEST_CASE("block recovery on single components") {
  const GammaBasis& gb = basis();
  LorentzMultiplet m;
  m.ps = 1.0;
  SpinorBlocks b = split_blocks(expand_multiplet(gb, m));
  LorentzMultiplet rec = block_inverse_relations(gb, b);
  CHECK(std::abs(rec.ps - cplx(1.0)) < 1e-14);
  CHECK(std::abs(rec.s) < 1e-14);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(rec.v[i]) + std::abs(rec.pv[i]) < 1e-14);
}
