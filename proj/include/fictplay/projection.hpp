#pragma once

#include "fictplay/geometry.hpp"

namespace fictplay {

// Central (or parallel) projection of one strategy simplex onto one of its
// edges.  The center is the indifferent point of the *opponent's* payoff
// structure, so every indifferent line in this simplex collapses to a point.
template <class T>
struct ProjectionMap {
  Player simplex_owner = Player::A;  // which simplex this map projects
  bool parallel_mode = false;
  Vec<T> center;     // generalized point (central mode)
  Vec<T> direction;  // sum-zero direction (parallel mode)
  int edge_v0 = 0, edge_v1 = 1;  // target edge; v0 maps to 0, v1 to 1
  Vec<T> denom;  // functional whose sign must stay constant over the simplex
};

namespace detail {

// Solve (1-t)*e0 + t*e1 = point on the line through (c, s): the collinearity
// determinant is affine in t.
template <class T>
T edge_parameter_central(const Vec<T>& c, const Vec<T>& s, int v0, int v1) {
  // work in the chart dropping coordinate v0: 2D affine coordinates
  // pick two coordinate axes != none; simplest: full 3D cross-product test
  // line through c and s: point p collinear iff det[p - c, s - c] = 0 in any chart.
  // Here p(t) = e0 + t (e1 - e0).
  // Use coordinates (i1, i2) = the two coordinates other than... any two work,
  // as long as the chart is faithful; use indices (v1, 3 - v0 - v1) for 3D.
  int i1 = v1, i2 = 3 - v0 - v1;
  T sx = s[i1] - c[i1], sy = s[i2] - c[i2];
  // p(t): coordinate i1 = t + ... careful: e0[i1] = 0, e1[i1] = 1; e0[i2] = e1[i2] = 0
  // p(t)[i1] = t, p(t)[i2] = 0
  T px0 = -c[i1], py0 = -c[i2];  // p(0) - c
  // det[(p - c), (s - c)] = (t + px0) * sy - py0 * sx = 0
  if (sgn(sy, num_traits<T>::tiny()) == 0)
    throw internal_consistency_error("projection ray parallel to target edge");
  T t = (py0 * sx) / sy - px0;
  return t;
}

template <class T>
T edge_parameter_parallel(const Vec<T>& dir, const Vec<T>& s, int v0, int v1) {
  int i1 = v1, i2 = 3 - v0 - v1;
  T sy = dir[i2], sx = dir[i1];
  if (sgn(sy, num_traits<T>::tiny()) == 0)
    throw internal_consistency_error("projection direction parallel to target edge");
  T t = (s[i2] * sx) / sy * T(-1) + s[i1];
  return t;
}

}  // namespace detail

template <class T>
T project_point(const ProjectionMap<T>& pm, const Vec<T>& s) {
  if (pm.parallel_mode)
    return detail::edge_parameter_parallel(pm.direction, s, pm.edge_v0, pm.edge_v1);
  return detail::edge_parameter_central(pm.center, s, pm.edge_v0, pm.edge_v1);
}

namespace detail {

template <class T>
Vec<T> line_direction(const Vec<T>& normal) {
  // direction within the simplex plane: orthogonal to the functional and to 1
  Vec<T> d(3);
  d[0] = normal[1] - normal[2];
  d[1] = normal[2] - normal[0];
  d[2] = normal[0] - normal[1];
  return d;
}

template <class T>
bool seg_touches_edge(const IndifferentLineSeg<T>& s, int missing_coord) {
  T band = num_traits<T>::exact ? T(0) : T(1e-9);
  bool a = abs_val(s.p0[missing_coord]) <= band;
  bool b = abs_val(s.p1[missing_coord]) <= band;
  return a || b;
}

}  // namespace detail

// Build the projection of one simplex.  `owner` names the simplex (Delta_A or
// Delta_B); the regions partitioning it belong to the opposite player's best
// responses... for Delta_A those are the column player's regions Z^B_j.
template <class T>
ProjectionMap<T> build_projection_side(const BimatrixGame<T>& g, Player owner) {
  Player region_player = other(owner);  // whose payoffs partition this simplex
  auto ip = indifferent_point(g, region_player);
  auto segs = indifferent_lines(g, region_player);
  if (segs.size() != 2)
    throw unsupported_configuration("projection needs exactly two indifferent segments");
  if (ip.status == IndiffStatus::Unique && ip.is_internal)
    throw unsupported_configuration("projection undefined for games with an internal indifferent point");

  const std::array<std::pair<int, int>, 3> edges = {{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [v0, v1] : edges) {
    int missing = 3 - v0 - v1;
    if (!detail::seg_touches_edge(segs[0], missing) ||
        !detail::seg_touches_edge(segs[1], missing))
      continue;
    ProjectionMap<T> pm;
    pm.simplex_owner = owner;
    pm.edge_v0 = v0;
    pm.edge_v1 = v1;
    if (ip.status == IndiffStatus::Unique) {
      pm.parallel_mode = false;
      pm.center = ip.point;
      // denominator functional: rays from the center parallel to the edge
      // line must miss the simplex; equivalently coordinate `missing` of
      // (x - center) keeps one sign... the edge line is {w_missing = 0},
      // so denom(x) = x[missing] - center[missing].
      pm.denom = zeros<T>(3);
      pm.denom[missing] = T(1);
      T c = -ip.point[missing];
      // affine functional via barycentric trick: f(x) = x[missing] + c*sum(x)
      for (int i = 0; i < 3; ++i) pm.denom[i] += c;
    } else if (ip.status == IndiffStatus::ParallelLines) {
      pm.parallel_mode = true;
      pm.direction = detail::line_direction(segs[0].normal);
      pm.denom = zeros<T>(3);
      pm.denom[missing] = T(1);  // direction not parallel to the edge checked below
    } else {
      throw unsupported_configuration("indifference structure is singular without parallel lines");
    }
    // validity: denominator sign constant on the simplex...
    int s0 = 0;
    bool valid = true;
    for (int v = 0; v < 3 && valid; ++v) {
      Vec<T> vert = unit_vertex<T>(3, v);
      int s = sgn(dot(pm.denom, vert), num_traits<T>::tiny());
      if (pm.parallel_mode) break;  // handled by the direction check instead
      if (s == 0) valid = false;
      else if (s0 == 0) s0 = s;
      else if (s != s0) valid = false;
    }
    if (pm.parallel_mode) {
      // direction must not be parallel to the target edge line
      if (sgn(pm.direction[missing], num_traits<T>::tiny()) == 0) valid = false;
    }
    if (!valid) continue;
    // breakpoints strictly interior, vertex images within [0,1]
    T b0, b1;
    try {
      b0 = project_point(pm, segs[0].p0);
      b1 = project_point(pm, segs[1].p0);
    } catch (const internal_consistency_error&) {
      continue;
    }
    if (!(b0 > T(0)) || !(b0 < T(1)) || !(b1 > T(0)) || !(b1 < T(1))) continue;
    bool img_ok = true;
    for (int v = 0; v < 3; ++v) {
      T img = project_point(pm, unit_vertex<T>(3, v));
      if (img < T(0) || img > T(1)) img_ok = false;
    }
    if (!img_ok) continue;
    return pm;
  }
  throw unsupported_configuration("no valid projection edge found");
}

template <class T>
std::pair<ProjectionMap<T>, ProjectionMap<T>> build_projection(const BimatrixGame<T>& g) {
  auto rep = classify_iip(g);
  if (rep.cls == IipClass::Reducible)
    throw unsupported_configuration("game is reducible (a weakly dominated action)");
  if (rep.cls == IipClass::WithIip)
    throw unsupported_configuration("game has an internal indifferent point");
  return {build_projection_side(g, Player::A), build_projection_side(g, Player::B)};
}

// One of the nine cells of the projected square.  Columns carry the column
// player's regions (x axis = phi_A), rows the row player's (y axis = phi_B).
template <class T>
struct SquareCell {
  int label = 0;        // 0..8 corresponds to I..IX, row-major from the top row
  int col = 0, row = 0; // col 0 = leftmost, row 0 = bottom
  int b_action = 0, a_action = 0;
  T x0, x1, y0, y1;
  T tx, ty;  // straight-line attractor of the cell's best-response pair
};

template <class T>
struct ProjectedSquare {
  ProjectionMap<T> phi_a, phi_b;
  T u1, u2;  // column dividers (images of the two indifferent lines in Delta_A)
  T v1, v2;  // row dividers
  std::array<int, 3> col_action{};  // B action per column, left to right
  std::array<int, 3> row_action{};  // A action per row, bottom to top
  std::array<T, 3> ea_img{}, eb_img{};
  std::array<SquareCell<T>, 9> cells{};
  T p, q, r;  // widths left to right
  T P, Q, R;  // heights top to bottom
  int interior_ea = -1, interior_eb = -1;  // vertex whose image is interior
  T m_off = T(0), M_off = T(0);  // distance of the interior images to the nearest divider
  bool boundary_degenerate = false;
};

template <class T>
std::pair<T, T> project_profile(const ProjectedSquare<T>& sq, const Vec<T>& x, const Vec<T>& y) {
  return {project_point(sq.phi_a, x), project_point(sq.phi_b, y)};
}

template <class T>
ProjectedSquare<T> build_projected_square(const BimatrixGame<T>& g) {
  ProjectedSquare<T> sq;
  auto [pa, pb] = build_projection(g);
  sq.phi_a = pa;
  sq.phi_b = pb;

  auto fill_axis = [&](Player owner, const ProjectionMap<T>& pm, T& d1, T& d2,
                       std::array<int, 3>& actions, std::array<T, 3>& imgs,
                       int& interior, T& offset) {
    Player region_player = other(owner);
    auto segs = indifferent_lines(g, region_player);
    T b0 = project_point(pm, segs[0].p0);
    T b1 = project_point(pm, segs[1].p0);
    d1 = b0 < b1 ? b0 : b1;
    d2 = b0 < b1 ? b1 : b0;
    auto regions = best_response_polygons(g, region_player);
    for (auto& reg : regions) {
      // classify the region's interval by its centroid image
      Vec<T> centroid = zeros<T>(3);
      for (auto& v : reg.vertices)
        for (int c = 0; c < 3; ++c) centroid[c] += v[c];
      T inv = T(1) / T((long)reg.vertices.size());
      for (int c = 0; c < 3; ++c) centroid[c] *= inv;
      T img = project_point(pm, centroid);
      int slot = img < d1 ? 0 : (img < d2 ? 1 : 2);
      actions[slot] = reg.action;
    }
    for (int v = 0; v < 3; ++v) {
      imgs[v] = project_point(pm, unit_vertex<T>(3, v));
      bool endpoint = (v == pm.edge_v0) || (v == pm.edge_v1);
      if (!endpoint) {
        interior = v;
        T da = abs_val(T(imgs[v] - d1));
        T db = abs_val(T(imgs[v] - d2));
        offset = da < db ? da : db;
        T band = num_traits<T>::exact ? T(0) : T(1e-12);
        if (!(offset > band)) sq.boundary_degenerate = true;
      }
    }
  };

  fill_axis(Player::A, sq.phi_a, sq.u1, sq.u2, sq.col_action, sq.ea_img, sq.interior_ea,
            sq.m_off);
  fill_axis(Player::B, sq.phi_b, sq.v1, sq.v2, sq.row_action, sq.eb_img, sq.interior_eb,
            sq.M_off);

  sq.p = sq.u1;
  sq.q = sq.u2 - sq.u1;
  sq.r = T(1) - sq.u2;
  sq.R = sq.v1;
  sq.Q = sq.v2 - sq.v1;
  sq.P = T(1) - sq.v2;

  std::array<T, 4> xs = {T(0), sq.u1, sq.u2, T(1)};
  std::array<T, 4> ys = {T(0), sq.v1, sq.v2, T(1)};
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      SquareCell<T> cell;
      cell.col = col;
      cell.row = row;
      cell.label = (2 - row) * 3 + col;  // I..IX from the top row
      cell.b_action = sq.col_action[col];
      cell.a_action = sq.row_action[row];
      cell.x0 = xs[col];
      cell.x1 = xs[col + 1];
      cell.y0 = ys[row];
      cell.y1 = ys[row + 1];
      cell.tx = sq.ea_img[cell.a_action];
      cell.ty = sq.eb_img[cell.b_action];
      sq.cells[cell.label] = cell;
    }
  }
  return sq;
}

template <class T>
ProjectedSquare<double> to_double_square(const ProjectedSquare<T>& s) {
  ProjectedSquare<double> d;
  auto conv_map = [](const ProjectionMap<T>& pm) {
    ProjectionMap<double> r;
    r.simplex_owner = pm.simplex_owner;
    r.parallel_mode = pm.parallel_mode;
    for (auto& v : pm.center) r.center.push_back(to_double(v));
    for (auto& v : pm.direction) r.direction.push_back(to_double(v));
    for (auto& v : pm.denom) r.denom.push_back(to_double(v));
    r.edge_v0 = pm.edge_v0;
    r.edge_v1 = pm.edge_v1;
    return r;
  };
  d.phi_a = conv_map(s.phi_a);
  d.phi_b = conv_map(s.phi_b);
  d.u1 = to_double(s.u1); d.u2 = to_double(s.u2);
  d.v1 = to_double(s.v1); d.v2 = to_double(s.v2);
  d.col_action = s.col_action;
  d.row_action = s.row_action;
  for (int i = 0; i < 3; ++i) {
    d.ea_img[i] = to_double(s.ea_img[i]);
    d.eb_img[i] = to_double(s.eb_img[i]);
  }
  for (int i = 0; i < 9; ++i) {
    auto& c = s.cells[i];
    SquareCell<double> cd;
    cd.label = c.label; cd.col = c.col; cd.row = c.row;
    cd.b_action = c.b_action; cd.a_action = c.a_action;
    cd.x0 = to_double(c.x0); cd.x1 = to_double(c.x1);
    cd.y0 = to_double(c.y0); cd.y1 = to_double(c.y1);
    cd.tx = to_double(c.tx); cd.ty = to_double(c.ty);
    d.cells[i] = cd;
  }
  d.p = to_double(s.p); d.q = to_double(s.q); d.r = to_double(s.r);
  d.P = to_double(s.P); d.Q = to_double(s.Q); d.R = to_double(s.R);
  d.interior_ea = s.interior_ea;
  d.interior_eb = s.interior_eb;
  d.m_off = to_double(s.m_off);
  d.M_off = to_double(s.M_off);
  d.boundary_degenerate = s.boundary_degenerate;
  return d;
}

// Image of each equilibrium in the square.  Mixed equilibria must land on a
// vertex of Cell V.
template <class T>
std::vector<std::pair<EquilibriumRecord<T>, std::pair<T, T>>> locate_ne_images(
    const ProjectedSquare<T>& sq, const std::vector<EquilibriumRecord<T>>& eqs) {
  std::vector<std::pair<EquilibriumRecord<T>, std::pair<T, T>>> out;
  T band = num_traits<T>::exact ? T(0) : T(1e-9);
  for (auto& rec : eqs) {
    auto img = project_profile(sq, rec.x, rec.y);
    if (rec.kind == EqKind::Mixed) {
      bool on_u = abs_val(T(img.first - sq.u1)) <= band || abs_val(T(img.first - sq.u2)) <= band;
      bool on_v = abs_val(T(img.second - sq.v1)) <= band || abs_val(T(img.second - sq.v2)) <= band;
      if (!on_u || !on_v)
        throw internal_consistency_error("mixed equilibrium image off the Cell V vertices");
    }
    out.push_back({rec, img});
  }
  return out;
}

template <class T>
struct StabilityClassification {
  EquilibriumRecord<T> record;
  Stability cls = Stability::Unclassified;
  double witness_radius = 0;
};

// Definition-7 test: walk a small step from each equilibrium component toward
// its two support vertices and read off which region the step lands in.  The
// two side-maps compose to the identity for a saddle and to the swap for a
// sink.
template <class T>
StabilityClassification<T> classify_stability(const BimatrixGame<T>& g,
                                              const EquilibriumRecord<T>& rec,
                                              double radius = 1.0 / 64) {
  StabilityClassification<T> out;
  out.record = rec;
  if (rec.kind != EqKind::Mixed || rec.support_a.size() != 2 || rec.support_b.size() != 2)
    throw input_error("stability classification needs a mixed 2x2-support equilibrium");
  const T tol = num_traits<T>::tol();
  int i = rec.support_a[0], j = rec.support_a[1];
  int ip = rec.support_b[0], jp = rec.support_b[1];
  T t = frac<T>(1, 64);
  radius = 1.0 / 64;
  for (int halvings = 0; halvings < 20; ++halvings, t /= T(2), radius /= 2) {
    auto step = [&](const Vec<T>& from, int vert, int n) {
      Vec<T> v = unit_vertex<T>(n, vert);
      Vec<T> r(from.size());
      for (size_t c = 0; c < from.size(); ++c) r[c] = from[c] + t * (v[c] - from[c]);
      return r;
    };
    auto bra_i = best_response_set(g, Player::B, step(rec.x, i, g.rows), tol);
    auto bra_j = best_response_set(g, Player::B, step(rec.x, j, g.rows), tol);
    auto brb_i = best_response_set(g, Player::A, step(rec.y, ip, g.cols), tol);
    auto brb_j = best_response_set(g, Player::A, step(rec.y, jp, g.cols), tol);
    if (bra_i.size() != 1 || bra_j.size() != 1 || brb_i.size() != 1 || brb_j.size() != 1)
      continue;
    int si = bra_i[0], sj = bra_j[0];
    int ti = brb_i[0], tj = brb_j[0];
    bool sigma_ok = (si == ip && sj == jp) || (si == jp && sj == ip);
    bool tau_ok = (ti == i && tj == j) || (ti == j && tj == i);
    if (!sigma_ok || !tau_ok || si == sj || ti == tj) continue;
    // compose: x side maps {i,j} -> {ip,jp}, y side maps back
    int back_of_si = (si == ip) ? ti : tj;
    out.cls = (back_of_si == i) ? Stability::Saddle : Stability::Sink;
    out.witness_radius = radius;
    return out;
  }
  out.cls = Stability::Unclassified;
  return out;
}

// ---- 4x4 face projection ---------------------------------------------------

// Central projection of the 3-simplex in R^4 from the indifferent point onto
// the face {x4 = 0}; coordinates are the first three barycentric weights.
template <class T>
struct FaceProjection {
  Vec<T> center;  // 4 coordinates
};

template <class T>
FaceProjection<T> build_face_projection(const Mat<T>& a) {
  BimatrixGame<T> g(a, a, "sym");
  auto ip = indifferent_point(g, Player::A);
  if (ip.status != IndiffStatus::Unique)
    throw unsupported_configuration("face projection needs a unique indifferent point");
  if (ip.is_internal)
    throw unsupported_configuration("face projection undefined with an internal indifferent point");
  return {ip.point};
}

template <class T>
Vec<T> project_to_face(const FaceProjection<T>& fp, const Vec<T>& x) {
  // ray center + t (x - center) hits x4 = 0 at t = c4 / (c4 - x4)
  T denom = fp.center[3] - x[3];
  if (sgn(denom, num_traits<T>::tiny()) == 0)
    throw internal_consistency_error("face projection ray parallel to the face");
  T t = fp.center[3] / denom;
  Vec<T> out(3);
  for (int c = 0; c < 3; ++c) out[c] = fp.center[c] + t * (x[c] - fp.center[c]);
  return out;
}

// Best response along the ray through a face point (regions are cones from
// the center, so this is well defined).
template <class T>
int face_best_response(const Mat<T>& a, const FaceProjection<T>& fp, const Vec<T>& z3) {
  Vec<T> z4 = {z3[0], z3[1], z3[2], T(0)};
  Vec<T> d(4);
  for (int c = 0; c < 4; ++c) d[c] = z4[c] - fp.center[c];
  Vec<T> score = mat_vec(a, d);
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (score[i] > score[best]) best = i;
  return best;
}

// Planar chart of the face: origin at e1, x axis toward e2, unit-simplex
// edges of length sqrt(2) (the natural Euclidean embedding).
inline std::pair<double, double> face_frame_xy(const std::vector<double>& w) {
  double a = (2 * w[1] + w[2]) / std::sqrt(2.0);
  double b = w[2] * std::sqrt(1.5);
  return {a, b};
}

inline std::vector<double> face_frame_point(double a, double b) {
  double w2 = b / std::sqrt(1.5);
  double w1 = (a * std::sqrt(2.0) - w2) / 2;
  return {1 - w1 - w2, w1, w2};
}

}  // namespace fictplay
