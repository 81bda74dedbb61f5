#pragma once

// Fixed-size dense linear algebra for the 3-state problems in this project.
// Matrices are row-major std::array-of-arrays so they stay trivially
// copyable value types.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace etssc {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t R, std::size_t C>
using Mat = std::array<std::array<double, C>, R>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Mat3 = Mat<3, 3>;
using Mat32 = Mat<3, 2>;
using Mat23 = Mat<2, 3>;

template <std::size_t N>
constexpr Vec<N> operator+(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator-(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator*(double s, const Vec<N>& a) {
  Vec<N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator-(const Vec<N>& a) {
  return -1.0 * a;
}

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t R, std::size_t C>
constexpr Vec<R> operator*(const Mat<R, C>& m, const Vec<C>& v) {
  Vec<R> r{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) r[i] += m[i][j] * v[j];
  return r;
}

template <std::size_t R, std::size_t K, std::size_t C>
constexpr Mat<R, C> operator*(const Mat<R, K>& a, const Mat<K, C>& b) {
  Mat<R, C> r{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t j = 0; j < C; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator+(const Mat<R, C>& a, const Mat<R, C>& b) {
  Mat<R, C> r{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator-(const Mat<R, C>& a, const Mat<R, C>& b) {
  Mat<R, C> r{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator*(double s, const Mat<R, C>& a) {
  Mat<R, C> r{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) r[i][j] = s * a[i][j];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<C, R> transpose(const Mat<R, C>& a) {
  Mat<C, R> r{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) r[j][i] = a[i][j];
  return r;
}

template <std::size_t N>
constexpr Mat<N, N> identity() {
  Mat<N, N> r{};
  for (std::size_t i = 0; i < N; ++i) r[i][i] = 1.0;
  return r;
}

template <std::size_t R, std::size_t C>
double max_abs(const Mat<R, C>& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double v : row) m = std::fmax(m, std::fabs(v));
  return m;
}

template <std::size_t R, std::size_t C>
bool all_finite(const Mat<R, C>& a) {
  for (const auto& row : a)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

template <std::size_t N>
bool all_finite(const Vec<N>& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

/// Roots of the characteristic polynomial of a 3x3 matrix, refined by Newton
/// iteration on the cubic. Real roots are returned with zero imaginary part;
/// ordering is by ascending real part.
std::array<std::complex<double>, 3> eigenvalues(const Mat3& a);

/// Eigenvalues of a symmetric 3x3 matrix, ascending (Jacobi rotations).
Vec3 symmetric_eigenvalues(const Mat3& a);

/// Largest singular value. Works through the 3x3 Gram matrix, so any shape
/// with at most three rows or three columns is supported.
template <std::size_t R, std::size_t C>
double spectral_norm(const Mat<R, C>& a) {
  static_assert(R <= 3 || C <= 3, "Gram matrix must be at most 3x3");
  Mat3 gram{};
  if constexpr (C <= 3) {
    for (std::size_t i = 0; i < C; ++i)
      for (std::size_t j = 0; j < C; ++j)
        for (std::size_t k = 0; k < R; ++k) gram[i][j] += a[k][i] * a[k][j];
  } else {
    for (std::size_t i = 0; i < R; ++i)
      for (std::size_t j = 0; j < R; ++j)
        for (std::size_t k = 0; k < C; ++k) gram[i][j] += a[i][k] * a[j][k];
  }
  return std::sqrt(std::fmax(symmetric_eigenvalues(gram)[2], 0.0));
}

/// Solves m * x = b by Gaussian elimination with partial pivoting.
/// Returns false when a pivot falls below `pivot_tol` times the largest
/// entry of m.
template <std::size_t N>
bool solve_dense(Mat<N, N> m, Vec<N> b, Vec<N>& x, double pivot_tol = 1e-13) {
  const double scale = max_abs(m);
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) <= pivot_tol * scale) return false;
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < N; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = N; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < N; ++c) s -= m[i][c] * x[c];
    x[i] = s / m[i][i];
  }
  return true;
}

}  // namespace etssc
