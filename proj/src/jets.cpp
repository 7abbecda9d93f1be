#include "dkl/jets.hpp"

#include <cmath>
#include <stdexcept>

namespace dkl {

Jet2 jet_const(cplx c) {
  Jet2 j;
  j.val = c;
  return j;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.val = a.val + b.val;
  for (int i = 0; i < 4; ++i) {
    r.d1[i] = a.d1[i] + b.d1[i];
    for (int j = 0; j < 4; ++j) r.d2[i][j] = a.d2[i][j] + b.d2[i][j];
  }
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.val = a.val - b.val;
  for (int i = 0; i < 4; ++i) {
    r.d1[i] = a.d1[i] - b.d1[i];
    for (int j = 0; j < 4; ++j) r.d2[i][j] = a.d2[i][j] - b.d2[i][j];
  }
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.val = a.val * b.val;
  for (int i = 0; i < 4; ++i) {
    r.d1[i] = a.d1[i] * b.val + a.val * b.d1[i];
    for (int j = 0; j < 4; ++j)
      r.d2[i][j] = a.d2[i][j] * b.val + a.d1[i] * b.d1[j] + a.d1[j] * b.d1[i] +
                   a.val * b.d2[i][j];
  }
  return r;
}

Jet2 operator*(cplx c, const Jet2& a) {
  Jet2 r;
  r.val = c * a.val;
  for (int i = 0; i < 4; ++i) {
    r.d1[i] = c * a.d1[i];
    for (int j = 0; j < 4; ++j) r.d2[i][j] = c * a.d2[i][j];
  }
  return r;
}

Jet2 operator-(const Jet2& a) { return cplx(-1.0) * a; }

namespace {

// f(u) with derivatives f', f'': chain rule through the inner jet.
Jet2 chain(const Jet2& u, cplx f, cplx fp, cplx fpp) {
  Jet2 r;
  r.val = f;
  for (int i = 0; i < 4; ++i) {
    r.d1[i] = fp * u.d1[i];
    for (int j = 0; j < 4; ++j)
      r.d2[i][j] = fpp * u.d1[i] * u.d1[j] + fp * u.d2[i][j];
  }
  return r;
}

}  // namespace

Jet2 jet_reciprocal(const Jet2& a) {
  if (std::abs(a.val) < 1e-300) throw std::domain_error("reciprocal at 0");
  cplx inv = 1.0 / a.val;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

// ---- expression nodes ----

struct FieldExpr::Node {
  enum Kind { kZero, kConst, kCoord, kAdd, kSub, kMul, kNeg,
              kSin, kCos, kExp, kSqrt, kRecip, kCosh, kSinh, kLinear };
  Kind kind = kZero;
  cplx c{};
  int coord = 0;
  std::shared_ptr<const Node> a, b;
  double lin[4][4]{};
};

namespace {

using Node = FieldExpr::Node;

std::shared_ptr<const Node> mk(Node n) {
  return std::make_shared<const Node>(std::move(n));
}

Jet2 eval_node(const Node& n, const Point& p) {
  switch (n.kind) {
    case Node::kZero:
      return Jet2{};
    case Node::kConst:
      return jet_const(n.c);
    case Node::kCoord: {
      Jet2 j;
      j.val = p.x[n.coord];
      j.d1[n.coord] = 1.0;
      return j;
    }
    case Node::kAdd:
      return eval_node(*n.a, p) + eval_node(*n.b, p);
    case Node::kSub:
      return eval_node(*n.a, p) - eval_node(*n.b, p);
    case Node::kMul:
      return eval_node(*n.a, p) * eval_node(*n.b, p);
    case Node::kNeg:
      return -eval_node(*n.a, p);
    case Node::kSin: {
      Jet2 u = eval_node(*n.a, p);
      cplx s = std::sin(u.val), c = std::cos(u.val);
      return chain(u, s, c, -s);
    }
    case Node::kCos: {
      Jet2 u = eval_node(*n.a, p);
      cplx s = std::sin(u.val), c = std::cos(u.val);
      return chain(u, c, -s, -c);
    }
    case Node::kExp: {
      Jet2 u = eval_node(*n.a, p);
      cplx e = std::exp(u.val);
      return chain(u, e, e, e);
    }
    case Node::kSqrt: {
      Jet2 u = eval_node(*n.a, p);
      if (u.val.real() <= 0.0 && u.val.imag() == 0.0)
        throw std::domain_error("sqrt of non-positive value");
      cplx s = std::sqrt(u.val);
      return chain(u, s, 0.5 / s, -0.25 / (s * u.val));
    }
    case Node::kRecip:
      return jet_reciprocal(eval_node(*n.a, p));
    case Node::kCosh: {
      Jet2 u = eval_node(*n.a, p);
      cplx ch = std::cosh(u.val), sh = std::sinh(u.val);
      return chain(u, ch, sh, ch);
    }
    case Node::kSinh: {
      Jet2 u = eval_node(*n.a, p);
      cplx ch = std::cosh(u.val), sh = std::sinh(u.val);
      return chain(u, sh, ch, sh);
    }
    case Node::kLinear: {
      Point q;
      for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += n.lin[i][j] * p.x[j];
        q.x[i] = s;
      }
      Jet2 u = eval_node(*n.a, q);  // jet in the inner coordinates u = Bx
      // chain rule with constant Jacobian B: d/dx_j = B_ij d/du_i
      Jet2 r;
      r.val = u.val;
      for (int j = 0; j < 4; ++j) {
        cplx g = 0.0;
        for (int i = 0; i < 4; ++i) g += u.d1[i] * n.lin[i][j];
        r.d1[j] = g;
        for (int k = 0; k < 4; ++k) {
          cplx h = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int l = 0; l < 4; ++l) h += u.d2[i][l] * n.lin[i][j] * n.lin[l][k];
          r.d2[j][k] = h;
        }
      }
      return r;
    }
  }
  throw std::logic_error("unreachable expr kind");
}

}  // namespace

FieldExpr::FieldExpr() : node_(mk(Node{})) {}

bool FieldExpr::is_zero() const { return node_->kind == Node::kZero; }

Jet2 FieldExpr::eval(const Point& p) const { return eval_node(*node_, p); }

FieldExpr fe_const(cplx c) {
  if (c == cplx(0.0)) return FieldExpr();
  Node n;
  n.kind = Node::kConst;
  n.c = c;
  return FieldExpr(mk(std::move(n)));
}

FieldExpr fe_coord(int i) {
  if (i < 0 || i > 3) throw std::out_of_range("coordinate index");
  Node n;
  n.kind = Node::kCoord;
  n.coord = i;
  return FieldExpr(mk(std::move(n)));
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Node n;
  n.kind = Node::kAdd;
  n.a = a.node_;
  n.b = b.node_;
  return FieldExpr(mk(std::move(n)));
}

FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
  if (b.is_zero()) return a;
  Node n;
  n.kind = Node::kSub;
  n.a = a.node_;
  n.b = b.node_;
  return FieldExpr(mk(std::move(n)));
}

FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
  if (a.is_zero() || b.is_zero()) return FieldExpr();
  Node n;
  n.kind = Node::kMul;
  n.a = a.node_;
  n.b = b.node_;
  return FieldExpr(mk(std::move(n)));
}

FieldExpr operator*(cplx c, const FieldExpr& a) { return fe_const(c) * a; }

FieldExpr operator-(const FieldExpr& a) {
  if (a.is_zero()) return a;
  Node n;
  n.kind = Node::kNeg;
  n.a = a.node_;
  return FieldExpr(mk(std::move(n)));
}

namespace {
FieldExpr unary(Node::Kind k, const FieldExpr& a) {
  Node n;
  n.kind = k;
  n.a = a.node_;
  return FieldExpr(mk(std::move(n)));
}
}  // namespace

FieldExpr fe_sin(const FieldExpr& a) { return unary(Node::kSin, a); }
FieldExpr fe_cos(const FieldExpr& a) { return unary(Node::kCos, a); }
FieldExpr fe_exp(const FieldExpr& a) { return unary(Node::kExp, a); }
FieldExpr fe_sqrt(const FieldExpr& a) { return unary(Node::kSqrt, a); }
FieldExpr fe_recip(const FieldExpr& a) { return unary(Node::kRecip, a); }
FieldExpr fe_cosh(const FieldExpr& a) { return unary(Node::kCosh, a); }
FieldExpr fe_sinh(const FieldExpr& a) { return unary(Node::kSinh, a); }

FieldExpr fe_linear_subst(const FieldExpr& f, const double B[4][4]) {
  Node n;
  n.kind = Node::kLinear;
  n.a = f.node_;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) n.lin[i][j] = B[i][j];
  return FieldExpr(mk(std::move(n)));
}

// ---- randomness ----

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
  double u = (next() >> 11) * 0x1.0p-53;  // [0,1)
  return lo + (hi - lo) * u;
}

FieldExpr random_polynomial(std::uint64_t seed, int degree, double bound) {
  if (degree < 0) throw std::invalid_argument("random_polynomial: degree < 0");
  if (bound <= 0.0) throw std::invalid_argument("random_polynomial: bound <= 0");
  SplitMix64 rng(seed);
  FieldExpr poly;
  // enumerate monomials x0^e0 x1^e1 x2^e2 x3^e3 with e0+..+e3 <= degree in a
  // fixed lexicographic order so the coefficient list is deterministic
  for (int e0 = 0; e0 <= degree; ++e0)
    for (int e1 = 0; e0 + e1 <= degree; ++e1)
      for (int e2 = 0; e0 + e1 + e2 <= degree; ++e2)
        for (int e3 = 0; e0 + e1 + e2 + e3 <= degree; ++e3) {
          cplx coeff(rng.uniform(-bound, bound), rng.uniform(-bound, bound));
          FieldExpr mono = fe_const(coeff);
          int e[4] = {e0, e1, e2, e3};
          for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) mono = mono * fe_coord(i);
          poly = poly + mono;
        }
  return poly;
}

Jet2 finite_difference_oracle(const FieldExpr& f, const Point& p, double h) {
  if (h <= 0.0) throw std::invalid_argument("finite difference step h <= 0");
  auto at = [&](int i, double di, int j, double dj) {
    Point q = p;
    q.x[i] += di;
    q.x[j] += dj;
    return f.eval(q).val;
  };
  Jet2 r;
  r.val = f.eval(p).val;
  for (int i = 0; i < 4; ++i) {
    r.d1[i] = (at(i, h, i, 0.0) - at(i, -h, i, 0.0)) / (2.0 * h);
    r.d2[i][i] = (at(i, h, i, 0.0) - 2.0 * r.val + at(i, -h, i, 0.0)) / (h * h);
    for (int j = i + 1; j < 4; ++j) {
      cplx mixed = (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) +
                    at(i, -h, j, -h)) /
                   (4.0 * h * h);
      r.d2[i][j] = r.d2[j][i] = mixed;
    }
  }
  return r;
}

}  // namespace dkl
