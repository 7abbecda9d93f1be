// Comparison of the matrix field U (two-sided spin connection, the boson
// interpretation) against the same 16 components read as four Dirac columns V
// (left connection only): the V residual operator, its projected component
// rows, and the exact connection term separating the two operators.
#pragma once

#include "dkl/dk_core.hpp"

namespace dkl {

// i gamma^alpha (d_alpha V + Gamma_alpha V) - m V on V = expand(multiplet)
MatrixC4 v_residual_matrix(const TetradChart& chart, const MultipletField& F,
                           const Point& p, const GammaBasis& gb);
MatrixC4 v_residual_matrix_core(const GeometryAt& g, const GammaBasis& gb,
                                const MatrixField& U, double mass);

// The scalar, pseudoscalar, and vector rows of the V system written out in
// tetrad components (the rows whose rotation-coefficient terms differ from
// the U system); labels: scalar, pseudoscalar, vector (4)
ResidualSet v_projected_rows(const TetradChart& chart, const MultipletField& F,
                             const Point& p, const GammaBasis& gb);

// U residual minus V residual, which must equal the right-connection term
// i gamma^alpha(x) U Gamma_alpha^t exactly
struct UVDiscrepancy {
  MatrixC4 diff;       // residual_matrix - v_residual_matrix
  MatrixC4 predicted;  // i gamma^alpha(x) U Gamma_alpha^t
  double magnitude = 0.0;      // norm_inf(diff)
  double prediction_gap = 0.0; // norm_inf(diff - predicted)
};
UVDiscrepancy u_v_discrepancy(const TetradChart& chart, const MultipletField& F,
                              const Point& p, const GammaBasis& gb);

}  // namespace dkl
