#pragma once

#include <vector>

#include "fictplay/numeric.hpp"

namespace fictplay {

template <class T>
using Vec = std::vector<T>;
template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
Vec<T> zeros(int n) {
  return Vec<T>(n, T(0));
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec<T> mat_vec(const Mat<T>& m, const Vec<T>& v) {
  Vec<T> r(m.size(), T(0));
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

// v^T M (utilities of the column player)
template <class T>
Vec<T> vec_mat(const Vec<T>& v, const Mat<T>& m) {
  size_t cols = m.empty() ? 0 : m[0].size();
  Vec<T> r(cols, T(0));
  for (size_t j = 0; j < cols; ++j) {
    T s(0);
    for (size_t i = 0; i < m.size(); ++i) s += v[i] * m[i][j];
    r[j] = s;
  }
  return r;
}

template <class T>
T sum(const Vec<T>& v) {
  T s(0);
  for (const T& x : v) s += x;
  return s;
}

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

template <class T>
struct LinearSolution {
  SolveStatus status = SolveStatus::Inconsistent;
  int rank = 0;
  Vec<T> particular;          // one solution (when consistent)
  std::vector<Vec<T>> nullspace;  // basis of the homogeneous solutions
};

// Gauss–Jordan with full row pivoting by magnitude (floats) / first
// nonzero (rationals).  Small systems only (n <= 8).
template <class T>
LinearSolution<T> solve_linear(Mat<T> a, Vec<T> rhs) {
  const int rows = (int)a.size();
  const int cols = rows ? (int)a[0].size() : 0;
  const T tol = num_traits<T>::tol();
  std::vector<int> pivot_col_of_row(rows, -1);
  std::vector<bool> col_used(cols, false);

  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int best = -1;
    T best_mag(0);
    for (int r = rank; r < rows; ++r) {
      T mag = abs_val(a[r][c]);
      if (mag > tol && (best < 0 || mag > best_mag)) {
        best = r;
        best_mag = mag;
        if (num_traits<T>::exact) break;
      }
    }
    if (best < 0) continue;
    std::swap(a[best], a[rank]);
    std::swap(rhs[best], rhs[rank]);
    T piv = a[rank][c];
    for (int j = 0; j < cols; ++j) a[rank][j] /= piv;
    rhs[rank] /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      T f = a[r][c];
      if (sgn(f, tol) == 0) continue;
      for (int j = 0; j < cols; ++j) a[r][j] -= f * a[rank][j];
      rhs[r] -= f * rhs[rank];
    }
    pivot_col_of_row[rank] = c;
    col_used[c] = true;
    ++rank;
  }

  LinearSolution<T> out;
  out.rank = rank;
  for (int r = rank; r < rows; ++r) {
    if (sgn(rhs[r], tol) != 0) {
      out.status = SolveStatus::Inconsistent;
      return out;
    }
  }
  out.particular = zeros<T>(cols);
  for (int r = 0; r < rank; ++r) out.particular[pivot_col_of_row[r]] = rhs[r];
  for (int c = 0; c < cols; ++c) {
    if (col_used[c]) continue;
    Vec<T> dir = zeros<T>(cols);
    dir[c] = T(1);
    for (int r = 0; r < rank; ++r) dir[pivot_col_of_row[r]] = -a[r][c];
    out.nullspace.push_back(dir);
  }
  out.status = out.nullspace.empty() ? SolveStatus::Unique : SolveStatus::Underdetermined;
  return out;
}

template <class T>
T det(Mat<T> a) {
  const int n = (int)a.size();
  const T tol = num_traits<T>::tol();
  T d(1);
  for (int c = 0; c < n; ++c) {
    int best = -1;
    T best_mag(0);
    for (int r = c; r < n; ++r) {
      T mag = abs_val(a[r][c]);
      if (mag > tol && (best < 0 || mag > best_mag)) {
        best = r;
        best_mag = mag;
        if (num_traits<T>::exact) break;
      }
    }
    if (best < 0) return T(0);
    if (best != c) {
      std::swap(a[best], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      T f = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

}  // namespace fictplay
