// The Dirac-Kahler field in its six guises and the residual operators that
// certify they are the same equation: 4x4 matrix form, 2-spinor blocks,
// tetrad components, coordinate tensors, antisymmetric forms, and the
// pseudotensor (barred) form.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dkl/clifford.hpp"
#include "dkl/geometry.hpp"

namespace dkl {

// Lorentz-frame component functions {Psi, Psi_l, Psi~, Psi~_l, Psi_mn} and
// the mass; the antisymmetric block stores independent pairs only.
struct MultipletField {
  FieldExpr s;
  FieldExpr v[4];
  FieldExpr ps;
  FieldExpr pv[4];
  FieldExpr t_pairs[6];  // kTensorPairs order; t[n][m] = -t[m][n]
  double mass = 1.0;

  FieldExpr t(int m, int n) const;  // signed lookup, zero on the diagonal
};

MultipletField random_multiplet_field(std::uint64_t seed, int degree,
                                      double bound, double mass);

// value + first partials of a 4x4 matrix-valued function at a point
struct MatrixField {
  MatrixC4 val;
  MatrixC4 d1[4];
};

using MatrixFieldFn = std::function<MatrixField(const Point&)>;

// U(p) = expand_multiplet of the component jets, with its partials
MatrixField matrix_field_at(const GammaBasis& gb, const MultipletField& F,
                            const Point& p);

struct ResidualSet {
  std::string name;
  Point point;
  std::vector<std::pair<std::string, std::vector<cplx>>> entries;

  const std::vector<cplx>& at(const std::string& label) const;
  void add(const std::string& label, std::vector<cplx> values);
};

// max componentwise |a-b| / max(1,|a|,|b|) over entries shared by both sets
double residual_set_dist(const ResidualSet& a, const ResidualSet& b);

// ---- the six formulations ----

// (matrix) i gamma^alpha (d_alpha U + Gamma_alpha U + U Gamma_alpha^t) - m U
MatrixC4 residual_matrix(const TetradChart& chart, const MultipletField& F,
                         const Point& p, const GammaBasis& gb);
// same operator applied to an arbitrary matrix field (gauge-transform route)
MatrixC4 residual_matrix_field(const TetradChart& chart, const MatrixFieldFn& U,
                               double mass, const Point& p, const GammaBasis& gb);
MatrixC4 residual_matrix_core(const GeometryAt& g, const GammaBasis& gb,
                              const MatrixField& U, double mass);

// (2-spinor) the four 2x2 block equations; order ul, ur, ll, lr
struct TwoSpinorResidual {
  MatrixC2 ul, ur, ll, lr;
};
TwoSpinorResidual residual_two_spinor(const TetradChart& chart,
                                      const MultipletField& F, const Point& p,
                                      const GammaBasis& gb);

// (tetrad components) labels: scalar, pseudoscalar, vector (4),
// pseudovector (4), tensor (6, kTensorPairs order)
ResidualSet residual_tetrad(const TetradChart& chart, const MultipletField& F,
                            const Point& p, const GammaBasis& gb);

// (coordinate tensors) same labels, coordinate indices
ResidualSet residual_tensor(const TetradChart& chart, const MultipletField& F,
                            const Point& p, const GammaBasis& gb);

// (antisymmetric forms) labels: form0, form1 (4), form2 (6 pairs),
// form3 (4 triples 012,013,023,123), form4 (1)
ResidualSet residual_antisym(const TetradChart& chart, const MultipletField& F,
                             const Point& p, const GammaBasis& gb);

// (pseudotensor form) labels as residual_tensor; pseudo rows carry the
// barred variables and the Levi-Civita object E instead of eps(x)
ResidualSet residual_pseudo(const TetradChart& chart, const MultipletField& F,
                            const Point& p, const GammaBasis& gb);

// trace-projection of a matrix residual onto the canonical equation slots
ResidualSet project_residual(const GammaBasis& gb, const MatrixC4& R);

// contract the frame indices of a tetrad-form residual set with e^{(a)}_alpha
ResidualSet tetrad_to_tensor(const GeometryAt& g, const ResidualSet& rs);

// the antisymmetric-form rows a tensor-form residual set dualizes to
ResidualSet tensor_to_antisym(const GeometryAt& g, const ResidualSet& rs);

// multiply the pseudo rows (pseudoscalar, pseudovector) by J(e)
ResidualSet tensor_to_pseudo(const GeometryAt& g, const ResidualSet& rs);

// flat-space systems evaluated from plain partial derivatives (the classical
// Minkowski forms); used to certify the flat reduction of every operator
MatrixC4 flat_residual_matrix(const MultipletField& F, const Point& p,
                              const GammaBasis& gb);
ResidualSet flat_residual_tetrad(const MultipletField& F, const Point& p,
                                 const GammaBasis& gb);
TwoSpinorResidual flat_residual_two_spinor(const MultipletField& F, const Point& p,
                                           const GammaBasis& gb);

// ---- symmetry operations ----

// local Lorentz gauge element: bispinor rep S(x) with its induced vector
// matrix; built from one generator, self-calibrating the vector-rep sign
struct LorentzGaugeElement {
  FieldExpr S[4][4];      // bispinor matrix entries
  LorentzFieldExpr L;     // S^{-1} gamma^a S = L^a_b gamma^b
  LorentzFieldExpr Linv;  // frame rotation applied to the tetrad

  MatrixField eval_S(const Point& p) const;
};

// plane (m,n): spatial pair -> rotation by theta(x); (0,k) -> boost
LorentzGaugeElement make_gauge_element(const GammaBasis& gb, int m, int n,
                                       const FieldExpr& angle);

struct GaugeTransformed {
  TetradChart chart;
  MatrixFieldFn U;
};

// chart' = tetrad rotated by L^{-1}, U' = S U S^t
GaugeTransformed gauge_transform(const TetradChart& chart, const MultipletField& F,
                                 const LorentzGaugeElement& S, const GammaBasis& gb);

// U' = (i gamma^0) U (i gamma^0)^t together with the P-reflected tetrad
GaugeTransformed p_reflection(const TetradChart& chart, const MultipletField& F,
                              const GammaBasis& gb);

}  // namespace dkl
