// Second-order forward-mode differentiation: value + gradient + Hessian of
// smooth scalar fields at a point. Fields are expression trees (polynomials
// in the 4 coordinates plus analytic primitives), so polynomial jets are
// exact and primitive jets are analytically propagated.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dkl/matrix.hpp"  // cplx

namespace dkl {

struct Point {
  double x[4]{};
};

struct Jet2 {
  cplx val{};
  cplx d1[4]{};
  cplx d2[4][4]{};  // symmetric
};

Jet2 jet_const(cplx c);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);  // Leibniz to 2nd order
Jet2 operator*(cplx c, const Jet2& a);
Jet2 operator-(const Jet2& a);
Jet2 jet_reciprocal(const Jet2& a);
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * jet_reciprocal(b); }

// ---- field expressions ----

class FieldExpr {
 public:
  FieldExpr();  // the zero field
  Jet2 eval(const Point& p) const;
  bool is_zero() const;

  struct Node;
  explicit FieldExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

FieldExpr fe_const(cplx c);
FieldExpr fe_coord(int i);
FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(cplx c, const FieldExpr& a);
FieldExpr operator-(const FieldExpr& a);
FieldExpr fe_sin(const FieldExpr& a);
FieldExpr fe_cos(const FieldExpr& a);
FieldExpr fe_exp(const FieldExpr& a);
FieldExpr fe_sqrt(const FieldExpr& a);   // domain error on Re <= 0 input
FieldExpr fe_recip(const FieldExpr& a);  // domain error at 0
FieldExpr fe_cosh(const FieldExpr& a);
FieldExpr fe_sinh(const FieldExpr& a);
// f(Bx): coordinate substitution by a constant linear map.
FieldExpr fe_linear_subst(const FieldExpr& f, const double B[4][4]);

inline Jet2 jet_eval(const FieldExpr& f, const Point& p) { return f.eval(p); }

// ---- seeded deterministic randomness ----

// splitmix64: tiny, reproducible across platforms (unlike <random>
// distributions, whose output is implementation-defined).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  double uniform(double lo, double hi);  // uniform in [lo, hi)
};

// Complex-coefficient polynomial in 4 variables, total degree <= degree,
// coefficients uniform in [-bound, bound] (real and imaginary parts).
FieldExpr random_polynomial(std::uint64_t seed, int degree, double bound);

// Central-difference estimate of the jet (standard 2nd-order stencils).
Jet2 finite_difference_oracle(const FieldExpr& f, const Point& p, double h);

}  // namespace dkl
