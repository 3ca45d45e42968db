#pragma once

#include <array>
#include <optional>

#include "fictplay/equilibria.hpp"

namespace fictplay {

enum class IndiffStatus { Unique, ParallelLines, SingularOther };

// Generalized point making the opponent indifferent across all actions.
// Weights sum to one but may be negative.
template <class T>
struct IndifferentPointResult {
  IndiffStatus status = IndiffStatus::SingularOther;
  Vec<T> point;        // length n when status == Unique
  T level = T(0);      // the common payoff value
  bool is_internal = false;  // inside the closed simplex
};

namespace detail {

// Augmented system: rows [u_i1 - u_in, ..., u_i(n-1) - u_in, -1] * (w, c) = -u_in
// where u_ik is the opponent's payoff for action i against pure k.
template <class T>
std::pair<Mat<T>, Vec<T>> indifference_system(const Mat<T>& util_rows) {
  int n = (int)util_rows.size();
  Mat<T> m(n, Vec<T>(n, T(0)));
  Vec<T> rhs(n, T(0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k + 1 < n; ++k) m[i][k] = util_rows[i][k] - util_rows[i][n - 1];
    m[i][n - 1] = T(-1);
    rhs[i] = -util_rows[i][n - 1];
  }
  return {m, rhs};
}

// Lines {row_i = row_j} and {row_i = row_k} in the simplex plane are parallel
// iff det(n_ij, n_ik, 1) = 0.
template <class T>
bool lines_parallel(const Vec<T>& n1, const Vec<T>& n2) {
  Mat<T> m = {n1, n2, Vec<T>(n1.size(), T(1))};
  return sgn(det(m), num_traits<T>::tol()) == 0;
}

}  // namespace detail

// Indifference point of `player`'s payoff structure: the generalized strategy
// of the *opponent* making all of `player`'s actions pay the same.
// player == A solves A y = c 1 (a point in Delta_B's affine hull);
// player == B solves x^T B = c 1 (a point in Delta_A's affine hull).
template <class T>
IndifferentPointResult<T> indifferent_point(const BimatrixGame<T>& g, Player player) {
  if (g.rows != g.cols)
    throw unsupported_configuration("indifferent point requires a square game");
  const int n = g.rows;
  Mat<T> util(n, Vec<T>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      util[i][k] = player == Player::A ? g.a[i][k] : g.b[k][i];
  auto [m, rhs] = detail::indifference_system(util);
  IndifferentPointResult<T> out;
  auto sol = solve_linear(m, rhs);
  if (sol.status == SolveStatus::Unique) {
    out.status = IndiffStatus::Unique;
    out.point = zeros<T>(n);
    T s(0);
    for (int k = 0; k + 1 < n; ++k) {
      out.point[k] = sol.particular[k];
      s += sol.particular[k];
    }
    out.point[n - 1] = T(1) - s;
    out.level = sol.particular[n - 1];
    out.is_internal = true;
    for (const T& w : out.point)
      if (w < T(0)) out.is_internal = false;
    return out;
  }
  out.status = IndiffStatus::SingularOther;
  if (n == 3) {
    // pairwise difference normals; identical utility rows count as singular
    Vec<T> n12(n), n13(n);
    bool deg = true;
    for (int k = 0; k < n; ++k) {
      n12[k] = util[0][k] - util[1][k];
      n13[k] = util[0][k] - util[2][k];
      if (sgn(n12[k], num_traits<T>::tol()) != 0 || sgn(n13[k], num_traits<T>::tol()) != 0)
        deg = false;
    }
    (void)deg;
    bool any12 = false, any13 = false;
    for (int k = 0; k < n; ++k) {
      if (sgn(n12[k], num_traits<T>::tol()) != 0) any12 = true;
      if (sgn(n13[k], num_traits<T>::tol()) != 0) any13 = true;
    }
    if (any12 && any13 && detail::lines_parallel(n12, n13))
      out.status = IndiffStatus::ParallelLines;
  }
  return out;
}

// A maximal segment of {u_j = u_k > u_i} clipped to the opponent simplex.
template <class T>
struct IndifferentLineSeg {
  Player player;    // whose actions tie
  int j = 0, k = 0; // the tied pair
  Vec<T> normal;    // functional u_j - u_k in barycentric coordinates
  Vec<T> p0, p1;    // endpoints inside the simplex
};

namespace detail {

// payoff rows of `player` as functionals on the opponent simplex
template <class T>
Mat<T> utilities_of(const BimatrixGame<T>& g, Player player) {
  int n = g.actions(player);
  int m = g.actions(other(player));
  Mat<T> util(n, Vec<T>(m));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m; ++k)
      util[i][k] = player == Player::A ? g.a[i][k] : g.b[k][i];
  return util;
}

template <class T>
Vec<T> lerp(const Vec<T>& a, const Vec<T>& b, const T& t) {
  Vec<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

}  // namespace detail

template <class T>
std::vector<IndifferentLineSeg<T>> indifferent_lines(const BimatrixGame<T>& g, Player player) {
  const int n = g.actions(player);
  const int m = g.actions(other(player));
  if (m != 3) throw unsupported_configuration("clipped indifferent lines need a 3-simplex");
  const T tol = num_traits<T>::tol();
  Mat<T> util = detail::utilities_of(g, player);
  std::vector<IndifferentLineSeg<T>> segs;
  std::array<Vec<T>, 3> verts = {unit_vertex<T>(3, 0), unit_vertex<T>(3, 1), unit_vertex<T>(3, 2)};
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Vec<T> normal(m);
      for (int c = 0; c < m; ++c) normal[c] = util[j][c] - util[k][c];
      // intersect {normal . y = 0} with the triangle
      std::vector<Vec<T>> pts;
      for (int e = 0; e < 3; ++e) {
        const Vec<T>& a = verts[e];
        const Vec<T>& b = verts[(e + 1) % 3];
        T va = dot(normal, a), vb = dot(normal, b);
        int sa = sgn(va, tol), sb = sgn(vb, tol);
        if (sa == 0 && sb == 0) continue;  // edge on the line
        if (sa == 0) pts.push_back(a);
        else if (sb == 0) pts.push_back(b);
        else if (sa != sb) {
          T t = va / (va - vb);
          pts.push_back(detail::lerp(a, b, t));
        }
      }
      // dedup near-identical crossing points (vertex hits arrive twice)
      std::vector<Vec<T>> uniq;
      for (auto& p : pts) {
        bool dup = false;
        for (auto& q : uniq) {
          bool eq = true;
          for (int c = 0; c < m; ++c) {
            T d = abs_val(T(p[c] - q[c]));
            if (d > tol + T(num_traits<T>::exact ? 0 : 1e-10)) eq = false;
          }
          dup = dup || eq;
        }
        if (!dup) uniq.push_back(p);
      }
      if (uniq.size() < 2) continue;
      // restrict to the active part where u_j = u_k strictly beats the rest
      Vec<T> a = uniq[0], b = uniq[1];
      T lo(0), hi(1);
      bool empty = false;
      for (int i = 0; i < n && !empty; ++i) {
        if (i == j || i == k) continue;
        Vec<T> hnorm(m);
        for (int c = 0; c < m; ++c) hnorm[c] = util[j][c] - util[i][c];
        T ha = dot(hnorm, a), hb = dot(hnorm, b);
        T slope = hb - ha;  // value along the segment is ha + t*slope
        int ss = sgn(slope, tol);
        if (ss == 0) {
          if (sgn(ha, tol) <= 0) empty = true;
          continue;
        }
        T bound = -ha / slope;
        if (ss > 0) { if (bound > lo) lo = bound; }
        else { if (bound < hi) hi = bound; }
      }
      if (empty || !(hi > lo)) continue;
      IndifferentLineSeg<T> seg;
      seg.player = player;
      seg.j = j;
      seg.k = k;
      seg.normal = normal;
      seg.p0 = detail::lerp(a, b, lo);
      seg.p1 = detail::lerp(a, b, hi);
      segs.push_back(seg);
    }
  }
  return segs;
}

// Convex best-response region, clipped against the opponent simplex.
// Vertices are barycentric, counterclockwise in (w2, w3) coordinates;
// area is normalized so the whole simplex has area 1.
template <class T>
struct BestResponsePolygon {
  Player player;
  int action = 0;
  std::vector<Vec<T>> vertices;
  T area = T(0);
};

namespace detail {

template <class T>
std::vector<Vec<T>> clip_halfplane(const std::vector<Vec<T>>& poly, const Vec<T>& normal) {
  // keep {normal . p >= 0}
  std::vector<Vec<T>> out;
  const T tol = num_traits<T>::tol();
  int n = (int)poly.size();
  for (int i = 0; i < n; ++i) {
    const Vec<T>& cur = poly[i];
    const Vec<T>& nxt = poly[(i + 1) % n];
    T vc = dot(normal, cur), vn = dot(normal, nxt);
    bool cin = !(vc < -tol), nin = !(vn < -tol);
    if (cin) out.push_back(cur);
    if (cin != nin) {
      T t = vc / (vc - vn);
      out.push_back(lerp(cur, nxt, t));
    }
  }
  return out;
}

template <class T>
std::vector<Vec<T>> dedup_vertices(const std::vector<Vec<T>>& poly) {
  T band = num_traits<T>::exact ? T(0) : T(1e-10);
  std::vector<Vec<T>> out;
  for (auto& p : poly) {
    bool dup = false;
    for (auto& q : out) {
      bool eq = true;
      for (size_t c = 0; c < p.size(); ++c)
        if (abs_val(T(p[c] - q[c])) > band) eq = false;
      if (eq) dup = true;
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

// Signed area in the affine chart (w2, w3); full simplex = 1/2.
template <class T>
T chart_area(const std::vector<Vec<T>>& poly) {
  T s(0);
  int n = (int)poly.size();
  for (int i = 0; i < n; ++i) {
    const Vec<T>& p = poly[i];
    const Vec<T>& q = poly[(i + 1) % n];
    s += p[1] * q[2] - q[1] * p[2];
  }
  return s / T(2);
}

}  // namespace detail

template <class T>
std::vector<BestResponsePolygon<T>> best_response_polygons(const BimatrixGame<T>& g,
                                                           Player player) {
  const int m = g.actions(other(player));
  if (m != 3) throw unsupported_configuration("region polygons need a 3-simplex");
  const int n = g.actions(player);
  Mat<T> util = detail::utilities_of(g, player);
  std::vector<BestResponsePolygon<T>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Vec<T>> poly = {unit_vertex<T>(3, 0), unit_vertex<T>(3, 1), unit_vertex<T>(3, 2)};
    for (int j = 0; j < n && !poly.empty(); ++j) {
      if (j == i) continue;
      Vec<T> normal(m);
      for (int c = 0; c < m; ++c) normal[c] = util[i][c] - util[j][c];
      poly = detail::clip_halfplane(poly, normal);
      poly = detail::dedup_vertices(poly);
    }
    BestResponsePolygon<T> reg;
    reg.player = player;
    reg.action = i;
    if (poly.size() >= 3) {
      T area = detail::chart_area(poly);
      if (area < T(0)) {
        std::reverse(poly.begin(), poly.end());
        area = -area;
      }
      reg.vertices = poly;
      reg.area = T(area * T(2));  // normalize: whole simplex -> 1
    }
    out.push_back(reg);
  }
  return out;
}

enum class IipClass { WithIip, WithoutIip, Reducible };

template <class T>
struct IipReport {
  IipClass cls = IipClass::WithoutIip;
  IndifferentPointResult<T> xbar;  // from B, lives with Delta_A
  IndifferentPointResult<T> ybar;  // from A, lives with Delta_B
  std::vector<std::pair<Player, int>> dominated;  // zero-measure regions
};

template <class T>
IipReport<T> classify_iip(const BimatrixGame<T>& g) {
  if (g.rows != g.cols) throw unsupported_configuration("IIP classification needs a square game");
  IipReport<T> rep;
  rep.xbar = indifferent_point(g, Player::B);
  rep.ybar = indifferent_point(g, Player::A);
  if (g.rows == 3) {
    T area_tol = num_traits<T>::exact ? T(0) : T(1e-12);
    for (Player p : {Player::A, Player::B}) {
      for (auto& reg : best_response_polygons(g, p)) {
        if (!(reg.area > area_tol)) rep.dominated.push_back({p, reg.action});
      }
    }
    if (!rep.dominated.empty()) {
      rep.cls = IipClass::Reducible;
      return rep;
    }
  }
  bool x_in = rep.xbar.status == IndiffStatus::Unique && rep.xbar.is_internal;
  bool y_in = rep.ybar.status == IndiffStatus::Unique && rep.ybar.is_internal;
  rep.cls = (x_in || y_in) ? IipClass::WithIip : IipClass::WithoutIip;
  return rep;
}

enum class IndiffPattern { OneEdgeTwice, TwoEdgesTwice, Other };

// Appendix-style configuration of the two indifferent segments: which simplex
// edges carry their four endpoints.
template <class T>
IndiffPattern indifference_pattern(const BimatrixGame<T>& g, Player player) {
  auto segs = indifferent_lines(g, player);
  if (segs.size() != 2) return IndiffPattern::Other;
  std::array<int, 3> edge_count = {0, 0, 0};  // edge e = {w_e == 0}
  T band = num_traits<T>::exact ? T(0) : T(1e-9);
  for (auto& s : segs) {
    for (const Vec<T>* p : {&s.p0, &s.p1}) {
      int zero = -1;
      int zeros = 0;
      for (int c = 0; c < 3; ++c)
        if (abs_val((*p)[c]) <= band) { zero = c; ++zeros; }
      if (zeros != 1) return IndiffPattern::Other;  // vertex or interior endpoint
      edge_count[zero] += 1;
    }
  }
  std::array<int, 3> sorted = edge_count;
  std::sort(sorted.begin(), sorted.end());
  if (sorted == std::array<int, 3>{1, 1, 2}) return IndiffPattern::OneEdgeTwice;
  if (sorted == std::array<int, 3>{0, 2, 2}) return IndiffPattern::TwoEdgesTwice;
  return IndiffPattern::Other;
}

}  // namespace fictplay
