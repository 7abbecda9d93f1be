// Small dense complex matrices (2x2, 4x4) with exact value semantics.
// These carry the gamma algebra; entries are sums of products of +-1, +-i
// inputs, so identity checks at this level use exact equality.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace dkl {

using cplx = std::complex<double>;

inline constexpr cplx I_UNIT{0.0, 1.0};

struct MatrixC2 {
  cplx m[2][2]{};

  static MatrixC2 identity() {
    MatrixC2 r;
    r.m[0][0] = r.m[1][1] = 1.0;
    return r;
  }
};

struct MatrixC4 {
  cplx m[4][4]{};

  static MatrixC4 identity() {
    MatrixC4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
    return r;
  }
};

// ---- 2x2 ----

inline MatrixC2 operator+(const MatrixC2& a, const MatrixC2& b) {
  MatrixC2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

inline MatrixC2 operator-(const MatrixC2& a, const MatrixC2& b) {
  MatrixC2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

inline MatrixC2 operator*(const MatrixC2& a, const MatrixC2& b) {
  MatrixC2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

inline MatrixC2 operator*(cplx c, const MatrixC2& a) {
  MatrixC2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = c * a.m[i][j];
  return r;
}

inline MatrixC2 transpose(const MatrixC2& a) {
  MatrixC2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

inline cplx trace(const MatrixC2& a) { return a.m[0][0] + a.m[1][1]; }

inline MatrixC2 inverse(const MatrixC2& a) {
  cplx det = a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0];
  if (std::abs(det) < 1e-300) throw std::runtime_error("singular 2x2 matrix");
  MatrixC2 r;
  r.m[0][0] = a.m[1][1] / det;
  r.m[1][1] = a.m[0][0] / det;
  r.m[0][1] = -a.m[0][1] / det;
  r.m[1][0] = -a.m[1][0] / det;
  return r;
}

inline double norm_inf(const MatrixC2& a) {
  double r = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(a.m[i][j]));
  return r;
}

// ---- 4x4 ----

inline MatrixC4 operator+(const MatrixC4& a, const MatrixC4& b) {
  MatrixC4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

inline MatrixC4 operator-(const MatrixC4& a, const MatrixC4& b) {
  MatrixC4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

inline MatrixC4 operator*(const MatrixC4& a, const MatrixC4& b) {
  MatrixC4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

inline MatrixC4 operator*(cplx c, const MatrixC4& a) {
  MatrixC4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = c * a.m[i][j];
  return r;
}

inline MatrixC4 operator-(const MatrixC4& a) { return cplx(-1.0) * a; }

inline MatrixC4 transpose(const MatrixC4& a) {
  MatrixC4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

inline MatrixC4 dagger(const MatrixC4& a) {
  MatrixC4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = std::conj(a.m[j][i]);
  return r;
}

inline cplx trace(const MatrixC4& a) {
  return a.m[0][0] + a.m[1][1] + a.m[2][2] + a.m[3][3];
}

inline double norm_inf(const MatrixC4& a) {
  double r = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(a.m[i][j]));
  return r;
}

inline MatrixC4 inverse(const MatrixC4& a) {
  // Gauss-Jordan with partial pivoting.
  cplx w[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      w[i][j] = a.m[i][j];
      w[i][4 + j] = (i == j) ? 1.0 : 0.0;
    }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(w[r][c]) > std::abs(w[piv][c])) piv = r;
    if (std::abs(w[piv][c]) < 1e-300) throw std::runtime_error("singular 4x4 matrix");
    if (piv != c)
      for (int j = 0; j < 8; ++j) std::swap(w[piv][j], w[c][j]);
    cplx d = w[c][c];
    for (int j = 0; j < 8; ++j) w[c][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      cplx f = w[r][c];
      if (f == cplx(0.0)) continue;
      for (int j = 0; j < 8; ++j) w[r][j] -= f * w[c][j];
    }
  }
  MatrixC4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.m[i][j] = w[i][4 + j];
  return out;
}

}  // namespace dkl
