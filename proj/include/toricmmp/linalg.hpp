#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "toricmmp/scalar.hpp"

namespace toricmmp {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;
template <class F>
using Vec = std::vector<F>;
template <class F>
using Mat = std::vector<std::vector<F>>;
using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(const Scalar& x) { return x.sign(); }

long long gcd_of(const IntVec& v);
IntVec primitive(const IntVec& v);
bool is_zero_vec(const IntVec& v);
long long dot(const IntVec& a, const IntVec& b);
IntVec add(const IntVec& a, const IntVec& b);

/// Primitive integer vector on the ray of a rational vector.
IntVec primitive_from_rational(const RatVec& v);

template <class F>
Vec<F> to_field(const IntVec& v) {
  Vec<F> r;
  r.reserve(v.size());
  for (long long x : v) r.emplace_back(F(static_cast<long>(x)));
  return r;
}

template <class F>
Mat<F> to_field(const IntMat& m) {
  Mat<F> r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(to_field<F>(row));
  return r;
}

/// Gaussian elimination to reduced row echelon form in place; returns pivot
/// columns.
template <class F>
std::vector<int> row_reduce(Mat<F>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    F inv = F(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      F f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(Mat<F> m) {
  return static_cast<int>(row_reduce(m).size());
}

inline int rank_int(const IntMat& m) { return rank(to_field<Rational>(m)); }

/// Basis of {x : m x = 0}.
template <class F>
std::vector<Vec<F>> nullspace(Mat<F> m, int cols) {
  std::vector<Vec<F>> basis;
  if (m.empty()) {
    for (int j = 0; j < cols; ++j) {
      Vec<F> e(cols, F(0));
      e[j] = F(1);
      basis.push_back(e);
    }
    return basis;
  }
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  for (int free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec<F> v(cols, F(0));
    v[free_col] = F(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free_col];
    basis.push_back(v);
  }
  return basis;
}

/// Solves the square system a x = b; nullopt when singular.
template <class F>
std::optional<Vec<F>> solve_square(const Mat<F>& a, const Vec<F>& b) {
  const int n = static_cast<int>(a.size());
  Mat<F> aug(n, Vec<F>(n + 1, F(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n] = b[i];
  }
  auto piv = row_reduce(aug);
  if (static_cast<int>(piv.size()) < n || piv.back() >= n) return std::nullopt;
  Vec<F> x(n);
  for (int i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& a) {
  const int n = static_cast<int>(a.size());
  Mat<F> aug(n, Vec<F>(2 * n, F(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = F(1);
  }
  auto piv = row_reduce(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n) return std::nullopt;
  Mat<F> inv(n, Vec<F>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

template <class F>
F determinant(Mat<F> m) {
  const int n = static_cast<int>(m.size());
  F det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(m[i][c])) {
        p = i;
        break;
      }
    if (p < 0) return F(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      F f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Integer determinant of a square integer matrix (exact).
Integer det_int(const IntMat& m);

/// gcd of all maximal minors of a k x n integer matrix with k <= n (0 if rank < k).
Integer max_minor_gcd(const IntMat& rows);

/// A unimodular integer matrix whose first column is the primitive vector u,
/// together with its inverse. Rows 2..n of the inverse form a lattice basis of
/// the orthogonal complement of u.
struct UnimodularCompletion {
  IntMat basis;    // columns: u, b_2, ..., b_n
  IntMat inverse;  // rows: dual basis
};
UnimodularCompletion complete_basis(const IntVec& u);

}  // namespace toricmmp
