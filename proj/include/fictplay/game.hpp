#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fictplay/linalg.hpp"

namespace fictplay {

enum class Player { A, B };

inline Player other(Player p) { return p == Player::A ? Player::B : Player::A; }

// Two-player normal form game (A,B).  a[i][j] pays the row player, b[i][j]
// the column player.  rows x cols up to 4x4 is the supported analysis range;
// storage accepts anything.
template <class T>
struct BimatrixGame {
  int rows = 0, cols = 0;
  Mat<T> a, b;
  std::string name;

  BimatrixGame() = default;
  BimatrixGame(Mat<T> a_, Mat<T> b_, std::string name_ = "")
      : rows((int)a_.size()), cols(a_.empty() ? 0 : (int)a_[0].size()),
        a(std::move(a_)), b(std::move(b_)), name(std::move(name_)) {
    if ((int)b.size() != rows || (rows && (int)b[0].size() != cols))
      throw input_error("payoff matrices must have identical dimensions");
  }

  int actions(Player p) const { return p == Player::A ? rows : cols; }
};

template <class T>
BimatrixGame<double> to_double_game(const BimatrixGame<T>& g) {
  Mat<double> a(g.rows, Vec<double>(g.cols)), b(g.rows, Vec<double>(g.cols));
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) {
      a[i][j] = to_double(g.a[i][j]);
      b[i][j] = to_double(g.b[i][j]);
    }
  return BimatrixGame<double>(a, b, g.name);
}

template <class T>
bool in_simplex(const Vec<T>& x, const T& tol) {
  T s = sum(x);
  T one(1);
  if (abs_val(T(s - one)) > tol) return false;
  for (const T& w : x) {
    T neg = -tol;
    if (w < neg) return false;
  }
  return true;
}

template <class T>
Vec<T> unit_vertex(int n, int i) {
  Vec<T> v = zeros<T>(n);
  v[i] = T(1);
  return v;
}

// Per-action utilities against the opponent's mixed strategy:
// (Ay)_i for player A, (x^T B)_j for player B.
template <class T>
Vec<T> action_payoffs(const BimatrixGame<T>& g, Player p, const Vec<T>& opponent) {
  if (p == Player::A) {
    if ((int)opponent.size() != g.cols) throw input_error("opponent strategy has wrong dimension");
    return mat_vec(g.a, opponent);
  }
  if ((int)opponent.size() != g.rows) throw input_error("opponent strategy has wrong dimension");
  return vec_mat(opponent, g.b);
}

template <class T>
std::pair<T, T> expected_payoff(const BimatrixGame<T>& g, const Vec<T>& x, const Vec<T>& y) {
  if ((int)x.size() != g.rows || (int)y.size() != g.cols)
    throw input_error("profile dimensions do not match the game");
  Vec<T> ay = mat_vec(g.a, y);
  Vec<T> by = mat_vec(g.b, y);
  return {dot(x, ay), dot(x, by)};
}

template <class T>
std::vector<int> best_response_set(const BimatrixGame<T>& g, Player p,
                                   const Vec<T>& opponent, const T& tol) {
  Vec<T> u = action_payoffs(g, p, opponent);
  T best = u[0];
  for (const T& v : u)
    if (v > best) best = v;
  std::vector<int> out;
  for (int i = 0; i < (int)u.size(); ++i) {
    T gap = best - u[i];
    if (!(gap > tol)) out.push_back(i);
  }
  return out;
}

template <class T>
int best_response_lowest(const BimatrixGame<T>& g, Player p, const Vec<T>& opponent,
                         const T& tol) {
  return best_response_set(g, p, opponent, tol).front();
}

template <class T>
std::vector<int> support(const Vec<T>& x, const T& tol) {
  std::vector<int> s;
  for (int i = 0; i < (int)x.size(); ++i)
    if (x[i] > tol) s.push_back(i);
  return s;
}

// Equalization principle: supported actions pay the same, unsupported pay no
// more.
template <class T>
bool verify_equilibrium(const BimatrixGame<T>& g, const Vec<T>& x, const Vec<T>& y,
                        const T& tol) {
  if ((int)x.size() != g.rows || (int)y.size() != g.cols) return false;
  for (int side = 0; side < 2; ++side) {
    Player p = side == 0 ? Player::A : Player::B;
    const Vec<T>& own = p == Player::A ? x : y;
    Vec<T> u = action_payoffs(g, p, p == Player::A ? y : x);
    std::vector<int> supp = support(own, tol);
    if (supp.empty()) return false;
    T level = u[supp[0]];
    for (int i : supp) {
      if (abs_val(T(u[i] - level)) > tol) return false;
    }
    for (int i = 0; i < (int)u.size(); ++i) {
      if (u[i] > level + tol) return false;
    }
  }
  return true;
}

struct DegeneracyViolation {
  Player pure_strategy_of;  // owner of the pure strategy with a non-unique reply
  int action;
};

template <class T>
struct NondegeneracyReport {
  bool nondegenerate = true;
  std::vector<DegeneracyViolation> violations;
};

template <class T>
NondegeneracyReport<T> check_nondegenerate(const BimatrixGame<T>& g, const T& tol) {
  NondegeneracyReport<T> rep;
  for (int j = 0; j < g.cols; ++j) {
    auto br = best_response_set(g, Player::A, unit_vertex<T>(g.cols, j), tol);
    if (br.size() != 1) rep.violations.push_back({Player::B, j});
  }
  for (int i = 0; i < g.rows; ++i) {
    auto br = best_response_set(g, Player::B, unit_vertex<T>(g.rows, i), tol);
    if (br.size() != 1) rep.violations.push_back({Player::A, i});
  }
  rep.nondegenerate = rep.violations.empty();
  return rep;
}

// Monotone-differences conditions over all i<i', j<j'.
template <class T>
bool quasi_supermodular_matrix_a(const Mat<T>& a) {
  int n = (int)a.size(), m = n ? (int)a[0].size() : 0;
  for (int i = 0; i < n; ++i)
    for (int i2 = i + 1; i2 < n; ++i2)
      for (int j = 0; j < m; ++j)
        for (int j2 = j + 1; j2 < m; ++j2)
          if (a[i2][j] > a[i][j] && !(a[i2][j2] > a[i][j2])) return false;
  return true;
}

template <class T>
bool quasi_supermodular_matrix_b(const Mat<T>& b) {
  int n = (int)b.size(), m = n ? (int)b[0].size() : 0;
  for (int i = 0; i < n; ++i)
    for (int i2 = i + 1; i2 < n; ++i2)
      for (int j = 0; j < m; ++j)
        for (int j2 = j + 1; j2 < m; ++j2)
          if (b[i][j2] > b[i][j] && !(b[i2][j2] > b[i2][j])) return false;
  return true;
}

template <class T>
bool is_quasi_supermodular(const BimatrixGame<T>& g) {
  return quasi_supermodular_matrix_a(g.a) && quasi_supermodular_matrix_b(g.b);
}

template <class T>
bool is_supermodular(const BimatrixGame<T>& g) {
  int n = g.rows, m = g.cols;
  for (int i = 0; i < n; ++i)
    for (int i2 = i + 1; i2 < n; ++i2)
      for (int j = 0; j < m; ++j)
        for (int j2 = j + 1; j2 < m; ++j2) {
          T da = g.a[i2][j2] - g.a[i][j2];
          T db = g.a[i2][j] - g.a[i][j];
          if (!(da > db)) return false;
          T ca = g.b[i2][j2] - g.b[i2][j];
          T cb = g.b[i][j2] - g.b[i][j];
          if (!(ca > cb)) return false;
        }
  return true;
}

struct ActionPermutationPair {
  std::vector<int> sigma;  // row relabeling: new[i] = old[sigma[i]]
  std::vector<int> tau;    // column relabeling
};

inline ActionPermutationPair identity_permutation(int n, int m) {
  ActionPermutationPair p;
  p.sigma.resize(n);
  p.tau.resize(m);
  for (int i = 0; i < n; ++i) p.sigma[i] = i;
  for (int j = 0; j < m; ++j) p.tau[j] = j;
  return p;
}

inline bool is_permutation(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= (int)p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Linear equivalence (positive scale + per-column offsets for A, per-row
// offsets for B) followed by a simultaneous relabeling of actions.
template <class T>
BimatrixGame<T> apply_equivalence(const BimatrixGame<T>& g, const T& scale_a,
                                  const Vec<T>& offsets_a, const T& scale_b,
                                  const Vec<T>& offsets_b,
                                  const ActionPermutationPair& perm) {
  if (!(scale_a > T(0)) || !(scale_b > T(0)))
    throw input_error("equivalence scales must be positive");
  if ((int)offsets_a.size() != g.cols || (int)offsets_b.size() != g.rows)
    throw input_error("offset vectors have wrong length");
  if (!is_permutation(perm.sigma) || !is_permutation(perm.tau) ||
      (int)perm.sigma.size() != g.rows || (int)perm.tau.size() != g.cols)
    throw input_error("invalid action permutation");
  Mat<T> a(g.rows, Vec<T>(g.cols)), b(g.rows, Vec<T>(g.cols));
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) {
      a[i][j] = scale_a * g.a[i][j] + offsets_a[j];
      b[i][j] = scale_b * g.b[i][j] + offsets_b[i];
    }
  Mat<T> ap(g.rows, Vec<T>(g.cols)), bp(g.rows, Vec<T>(g.cols));
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) {
      ap[i][j] = a[perm.sigma[i]][perm.tau[j]];
      bp[i][j] = b[perm.sigma[i]][perm.tau[j]];
    }
  return BimatrixGame<T>(ap, bp, g.name);
}

}  // namespace fictplay
