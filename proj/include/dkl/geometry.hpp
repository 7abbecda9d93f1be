// Tetrad charts over a small catalog of spacetimes, and everything derived
// from a tetrad at a point: metric, Christoffels, Ricci rotation
// coefficients, spin connection, Riemann/Ricci, the tetrad determinant e(x)
// with its pseudoscalar sign J(e), and the two covariant Levi-Civita objects.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dkl/clifford.hpp"
#include "dkl/jets.hpp"

namespace dkl {

struct TetradChart {
  std::string name;
  std::map<std::string, double> params;
  double lo[4]{}, hi[4]{};     // coordinate box
  FieldExpr tetrad[4][4];      // e^alpha_{(a)}: [frame a][coordinate alpha]
};

struct GeometryAt {
  Point p;
  double e_up[4][4]{};         // e^alpha_{(a)}  [a][alpha]
  double e_down[4][4]{};       // e^{(a)}_alpha  [a][alpha]
  double de_up[4][4][4]{};     // d_mu e^alpha_{(a)}  [mu][a][alpha]
  double de_down[4][4][4]{};   // d_mu e^{(a)}_alpha  [mu][a][alpha]
  double g_down[4][4]{}, g_up[4][4]{};
  double dg_down[4][4][4]{};   // d_mu g_{ab}  [mu][a][b]
  double dg_up[4][4][4]{};
  double christoffel[4][4][4]{};     // Gamma^mu_{ab}  [mu][a][b]
  double dchristoffel[4][4][4][4]{}; // d_nu Gamma^mu_{ab}  [nu][mu][a][b]
  double gamma_ricci[4][4][4]{};     // gamma_{abc} (frame indices)
  MatrixC4 spin_gamma[4];            // Gamma_alpha
  MatrixC2 spin_sigma[4];            // chiral (upper-left) block of Gamma_alpha
  MatrixC2 spin_sigma_bar[4];        // lower-right block
  double riemann[4][4][4][4]{};      // R^nu_{sigma alpha beta}
  double ricci[4][4]{};              // R_{sigma beta} = R^nu_{sigma nu beta}
  double det_e = 0.0;                // e(x) = det(e_{(a)beta})
  double ddet_e[4]{};
  double jfac = 0.0;                 // J(e) = -e/|e|
  double sqrtmg = 0.0;               // sqrt(-g)
  double dsqrtmg[4]{};
  double eps_x[4][4][4][4]{};        // eps^{alpha beta rho sigma}(x), upper
  double eps_low_x[4][4][4][4]{};    // eps_{alpha beta rho sigma}(x) = e(x)*symbol
  double bigE_x[4][4][4][4]{};       // E_{alpha beta rho sigma}(x)
};

// L_b^{...a}(x) acting on the frame index: e'^alpha_{(b)} = L_b^a e^alpha_{(a)}.
struct LorentzFieldExpr {
  FieldExpr L[4][4];  // [b][a]
};

std::vector<TetradChart> catalog();
// Throws std::runtime_error("unknown chart: ...") if not in the catalog.
TetradChart find_chart(const std::string& name,
                       const std::map<std::string, double>* param_overrides = nullptr);

bool in_domain(const TetradChart& chart, const Point& p);

// All derived geometry at one point; throws on domain violation, singular
// tetrad, or a violated construction invariant.
GeometryAt geometry_at(const TetradChart& chart, const Point& p,
                       const GammaBasis& gb);

// Rank-4 Levi-Civita objects of the chart at g.p (copies of the cached
// arrays; the construction formulas live in geometry_at).
void levi_civita_eps(const GeometryAt& g, double out[4][4][4][4]);    // upper
void levi_civita_bigE(const GeometryAt& g, double out[4][4][4][4]);   // lower

// Rotate the frame index by a (possibly x-dependent) Lorentz matrix field.
// Validates L^T eta L = eta at sampled points; the metric is unchanged.
TetradChart apply_local_lorentz(const TetradChart& chart, const LorentzFieldExpr& L,
                                const std::string& suffix = "_rot");

// Constant L = diag(+1,-1,-1,-1) on the frame index (tetrad P-reflection).
TetradChart p_reflect_tetrad(const TetradChart& chart);

struct LinearCheckReport {
  double max_err_det = 0.0;  // |e'(x') - e(x)/det A|
  double max_err_j = 0.0;    // |J[e'] - sgn(det A) J[e]|
  bool pass = false;
};
// Linear coordinate substitution x' = A x: checks the pseudoscalar laws for
// e(x) and J(e) at sampled points.
LinearCheckReport linear_coordinate_check(const TetradChart& chart,
                                          const double A[4][4],
                                          const GammaBasis& gb,
                                          std::uint64_t seed = 1);

// Covariant derivative of a tensor with `rank` lower coordinate indices
// (rank 0..4). val has 4^rank entries (row-major), d1 is indexed
// [mu*4^rank + flat]. Returns nabla_mu T with mu leading: 4^(rank+1) entries.
std::vector<cplx> covariant_derivative(const GeometryAt& g, int rank,
                                       const std::vector<cplx>& val,
                                       const std::vector<cplx>& d1);

// nabla_mu nabla_nu T for a rank 0..2 lower tensor; d2 is indexed
// [(mu*4+nu)*4^rank + flat]. Returns 4^(rank+2) entries, (mu,nu) leading.
std::vector<cplx> second_covariant_derivative(const GeometryAt& g, int rank,
                                              const std::vector<cplx>& val,
                                              const std::vector<cplx>& d1,
                                              const std::vector<cplx>& d2);

// Riemann and Ricci at p (wrapper over geometry_at for callers that want
// only curvature).
void riemann_ricci(const TetradChart& chart, const Point& p, const GammaBasis& gb,
                   double riemann[4][4][4][4], double ricci[4][4]);

// Latin-hypercube sample of n points in the chart box (1% interior margin so
// finite-difference probes stay inside); deterministic in seed.
std::vector<Point> sample_points(const TetradChart& chart, std::uint64_t seed, int n);

}  // namespace dkl
