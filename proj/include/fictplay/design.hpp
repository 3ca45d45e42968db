#pragma once

#include "fictplay/projection.hpp"

namespace fictplay {

// Inverse design of a 3x3 game from target region geometry.  Each simplex is
// cut into three sectors by two lines of the pencil through an external
// center; the sector utilities are affine functionals vanishing on those
// lines.  The center becomes the indifferent point, the chosen edge crossings
// become the projected breakpoints.
template <class T>
struct SectorSpec {
  Vec<T> center;        // generalized point, coordinates sum to 1, outside the simplex
  int edge_v0 = 0, edge_v1 = 1;  // the edge both lines cross
  T t_low, t_high;      // breakpoint parameters on the edge, 0 < t_low < t_high < 1
  int act_low = 0, act_mid = 1, act_high = 2;  // sector actions by edge parameter
};

namespace detail {

template <class T>
Vec<T> cross3(const Vec<T>& a, const Vec<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// functional vanishing on the line through c and the edge point at parameter
// t, positive on the t = 1 side of the edge
template <class T>
Vec<T> pencil_functional(const SectorSpec<T>& s, const T& t) {
  Vec<T> p = zeros<T>(3);
  p[s.edge_v0] = T(1) - t;
  p[s.edge_v1] = t;
  Vec<T> h = detail::cross3(s.center, p);
  Vec<T> hi = unit_vertex<T>(3, s.edge_v1);
  if (dot(h, hi) < T(0))
    for (auto& v : h) v = -v;
  return h;
}

}  // namespace detail

// utilities of the three actions as barycentric functionals (rows)
template <class T>
Mat<T> sector_utilities(const SectorSpec<T>& s) {
  Vec<T> h1 = detail::pencil_functional(s, s.t_low);
  Vec<T> h2 = detail::pencil_functional(s, s.t_high);
  Mat<T> util(3, zeros<T>(3));
  for (int c = 0; c < 3; ++c) {
    util[s.act_low][c] = -h1[c];
    util[s.act_high][c] = h2[c];
  }
  return util;
}

// side_a partitions Delta_A (the column player's regions), side_b partitions
// Delta_B (the row player's regions).
template <class T>
BimatrixGame<T> inverse_design(const SectorSpec<T>& side_a, const SectorSpec<T>& side_b,
                               const std::string& name) {
  Mat<T> ub = sector_utilities(side_a);  // B's utilities on Delta_A
  Mat<T> ua = sector_utilities(side_b);  // A's utilities on Delta_B
  Mat<T> a(3, zeros<T>(3)), b(3, zeros<T>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a[i][j] = ua[i][j];
      b[i][j] = ub[j][i];
    }
  return BimatrixGame<T>(a, b, name);
}

}  // namespace fictplay
