#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "fictplay/dynamics.hpp"

namespace fictplay {

// d -> (a d + b) / (c d + e), composed by 2x2 coefficient products.
struct MoebiusMap {
  double a = 1, b = 0, c = 0, e = 1;
  std::string stage_label;
  std::string geometric_params;

  double operator()(double d) const { return (a * d + b) / (c * d + e); }
  double derivative(double d) const {
    double den = c * d + e;
    return (a * e - b * c) / (den * den);
  }
  MoebiusMap inverse() const {
    MoebiusMap m;
    m.a = e; m.b = -b; m.c = -c; m.e = a;
    m.stage_label = stage_label + "^-1";
    return m;
  }
};

// f then g, i.e. (g o f)
inline MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& f) {
  MoebiusMap m;
  m.a = g.a * f.a + g.b * f.c;
  m.b = g.a * f.b + g.b * f.e;
  m.c = g.c * f.a + g.e * f.c;
  m.e = g.c * f.b + g.e * f.e;
  m.stage_label = g.stage_label + "o" + f.stage_label;
  return m;
}

// ---- dihedral normalization --------------------------------------------------

struct SquareTransform {
  bool swap_axes = false, flip_x = false, flip_y = false;

  std::pair<double, double> apply(double x, double y) const {
    if (swap_axes) std::swap(x, y);
    if (flip_x) x = 1 - x;
    if (flip_y) y = 1 - y;
    return {x, y};
  }
};

inline ProjectedSquare<double> transform_square(const ProjectedSquare<double>& sq,
                                                const SquareTransform& tr) {
  ProjectedSquare<double> out = sq;
  if (tr.swap_axes) {
    std::swap(out.u1, out.v1);
    std::swap(out.u2, out.v2);
    std::swap(out.col_action, out.row_action);
    std::swap(out.ea_img, out.eb_img);
    std::swap(out.interior_ea, out.interior_eb);
    std::swap(out.m_off, out.M_off);
  }
  if (tr.flip_x) {
    double nu1 = 1 - out.u2, nu2 = 1 - out.u1;
    out.u1 = nu1;
    out.u2 = nu2;
    std::swap(out.col_action[0], out.col_action[2]);
    for (auto& v : out.ea_img) v = 1 - v;
  }
  if (tr.flip_y) {
    double nv1 = 1 - out.v2, nv2 = 1 - out.v1;
    out.v1 = nv1;
    out.v2 = nv2;
    std::swap(out.row_action[0], out.row_action[2]);
    for (auto& v : out.eb_img) v = 1 - v;
  }
  out.p = out.u1;
  out.q = out.u2 - out.u1;
  out.r = 1 - out.u2;
  out.R = out.v1;
  out.Q = out.v2 - out.v1;
  out.P = 1 - out.v2;
  std::array<double, 4> xs = {0, out.u1, out.u2, 1};
  std::array<double, 4> ys = {0, out.v1, out.v2, 1};
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col) {
      SquareCell<double> cell;
      cell.col = col;
      cell.row = row;
      cell.label = (2 - row) * 3 + col;
      cell.b_action = out.col_action[col];
      cell.a_action = out.row_action[row];
      cell.x0 = xs[col]; cell.x1 = xs[col + 1];
      cell.y0 = ys[row]; cell.y1 = ys[row + 1];
      cell.tx = out.ea_img[cell.a_action];
      cell.ty = out.eb_img[cell.b_action];
      out.cells[cell.label] = cell;
    }
  return out;
}

enum class ReturnConfig { MixedSink, PureNe };

struct ReturnMapAnalysis {
  ReturnConfig config = ReturnConfig::MixedSink;
  SquareTransform normalization;
  ProjectedSquare<double> square;  // normalized
  double p, q, r, P, Q, R, M, m;
  double section_length = 0;  // the section is {(u1, v2 + d) : d in (0, section_length]}
  double d_c = 0, d_C = 0;
  bool eight_cell_regime = false;  // d_C < section_length
  std::array<MoebiusMap, 8> stages;
  MoebiusMap composed8;      // full loop
  MoebiusMap composed6_top;  // mixed: I-II-V-VIII-VII-IV (exit V through the bottom)
  MoebiusMap composed6_right;  // mixed: I-II-III-VI-V-IV (exit V through the left)
  MoebiusMap composed4;      // mixed: I-II-V-IV
};

namespace detail {

inline bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

inline bool matches_mixed_pattern(const ProjectedSquare<double>& s, double nex, double ney) {
  double top = s.ea_img[s.row_action[2]];
  double mid = s.ea_img[s.row_action[1]];
  double bot = s.ea_img[s.row_action[0]];
  double left = s.eb_img[s.col_action[0]];
  double cmid = s.eb_img[s.col_action[1]];
  double right = s.eb_img[s.col_action[2]];
  if (!near(nex, s.u1) || !near(ney, s.v2)) return false;
  if (!near(top, 1) || !near(mid, 0)) return false;
  if (!(bot > 1e-9 && bot < s.u1 - 1e-9)) return false;
  if (!near(left, 1) || !near(cmid, 0)) return false;
  if (!(right > s.v1 + 1e-9 && right < s.v2 - 1e-9)) return false;
  return true;
}

inline bool matches_pure_pattern(const ProjectedSquare<double>& s, double nex, double ney) {
  double top = s.ea_img[s.row_action[2]];
  double mid = s.ea_img[s.row_action[1]];
  double bot = s.ea_img[s.row_action[0]];
  double left = s.eb_img[s.col_action[0]];
  double cmid = s.eb_img[s.col_action[1]];
  double right = s.eb_img[s.col_action[2]];
  if (!near(top, 0) || !near(bot, 1)) return false;
  if (!(mid > s.u1 + 1e-9 && mid < s.u2 - 1e-9)) return false;
  if (!near(left, 0) || !near(right, 1)) return false;
  if (!(cmid > s.v1 + 1e-9 && cmid < s.v2 - 1e-9)) return false;
  if (!near(nex, mid) || !near(ney, cmid)) return false;
  return true;
}

inline MoebiusMap stage(double a, double b, double c, double e, const char* label,
                        const char* params) {
  MoebiusMap m;
  m.a = a; m.b = b; m.c = c; m.e = e;
  m.stage_label = label;
  m.geometric_params = params;
  return m;
}

// Largest d0 at which the output of stage k reaches zero, solved by pulling 0
// back through the stage inverses on the admissible branch (inputs >= 0 with
// positive denominators).  Returns 0 when the constraint never binds on the
// section and +inf when it is violated everywhere on it.
inline double back_solve_threshold(const std::array<MoebiusMap, 8>& st, int k,
                                   double section_length) {
  auto fallback = [&]() {
    double probe = section_length;
    for (int jj = 0; jj <= k; ++jj) probe = st[jj](probe);
    return probe > 0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  double v = 0;
  for (int j = k; j >= 0; --j) {
    MoebiusMap inv = st[j].inverse();
    double w = inv(v);
    bool branch_ok = std::isfinite(w) && w >= -1e-15 && (st[j].c * w + st[j].e) > 0;
    if (!branch_ok) return fallback();
    v = std::max(w, 0.0);
  }
  return v;
}

}  // namespace detail

inline ReturnMapAnalysis build_return_map(const ProjectedSquare<double>& square,
                                          std::pair<double, double> ne_image,
                                          ReturnConfig config) {
  if (square.boundary_degenerate)
    throw unsupported_configuration("square has coincident breakpoints");
  for (int mask = 0; mask < 8; ++mask) {
    SquareTransform tr;
    tr.swap_axes = mask & 1;
    tr.flip_x = mask & 2;
    tr.flip_y = mask & 4;
    ProjectedSquare<double> s = transform_square(square, tr);
    auto [nex, ney] = tr.apply(ne_image.first, ne_image.second);
    bool match = config == ReturnConfig::MixedSink
                     ? detail::matches_mixed_pattern(s, nex, ney)
                     : detail::matches_pure_pattern(s, nex, ney);
    if (!match) continue;

    ReturnMapAnalysis an;
    an.config = config;
    an.normalization = tr;
    an.square = s;
    double p = an.p = s.p, q = an.q = s.q, r = an.r = s.r;
    double P = an.P = s.P, Q = an.Q = s.Q, R = an.R = s.R;
    an.section_length = P;
    if (config == ReturnConfig::MixedSink) {
      double M = an.M = s.v2 - s.eb_img[s.col_action[2]];
      double m = an.m = s.u1 - s.ea_img[s.row_action[0]];
      an.stages[0] = detail::stage(r, -q * (Q + R), 0, q + r, "phi0", "q,r,Q,R");
      an.stages[1] = detail::stage(r, 0, 1, M, "phi1", "r,M");
      an.stages[2] = detail::stage(M, 0, 1, p + q, "phi2", "M,p,q");
      an.stages[3] = detail::stage(p, q * R - p * Q, -1, Q + R, "phi3", "p,q,Q,R");
      an.stages[4] = detail::stage(R, 0, 1, m, "phi4", "R,m");
      an.stages[5] = detail::stage(m, 0, 1, P + Q, "phi5", "m,P,Q");
      an.stages[6] = detail::stage(P, Q * p, 0, P + Q, "phi6", "p,P,Q");
      an.stages[7] = detail::stage(P, 0, 1, q + r, "phi7", "P,q,r");
      an.composed8 = an.stages[0];
      for (int i = 1; i < 8; ++i) an.composed8 = compose(an.stages[i], an.composed8);
      // thresholds: the 8-cell loop needs d1 > 0 and d4 > 0
      double t1 = detail::back_solve_threshold(an.stages, 0, P);
      double t4 = detail::back_solve_threshold(an.stages, 3, P);
      an.d_C = std::max(t1, t4);
      double den = R * (q + r) - p * Q;
      an.d_c = den > 0 ? p * Q * (Q + R) / den : 0;
      if (an.d_c > an.d_C) an.d_c = an.d_C;
      an.eight_cell_regime = std::isfinite(an.d_C) && an.d_C < P;
      // alternate paths
      MoebiusMap enterV_top = detail::stage(1, p * (Q + R), 1, Q + R, "xc", "p,Q,R");
      MoebiusMap v_bottom = detail::stage(R, -p * (Q + R), 0, Q + R, "d4'", "p,R,Q");
      MoebiusMap tail48 = compose(an.stages[7],
                                  compose(an.stages[6], compose(an.stages[5], an.stages[4])));
      an.composed6_top = compose(tail48, compose(v_bottom, enterV_top));
      MoebiusMap v_left = detail::stage(0, p * (Q + R), 1, 0, "y'", "p,Q,R");
      MoebiusMap cellIV = detail::stage(-p, p * (Q + R), -1, 1, "d7'", "p,P,Q,R");
      MoebiusMap head3 = compose(an.stages[2], compose(an.stages[1], an.stages[0]));
      MoebiusMap v_left_from_right = detail::stage(-p, p * (Q + R), 0, p + q, "y''", "p,q,Q,R");
      an.composed6_right = compose(an.stages[7], compose(cellIV, compose(v_left_from_right, head3)));
      an.composed4 = compose(an.stages[7], compose(cellIV, compose(v_left, enterV_top)));
    } else {
      double M = an.M = s.eb_img[s.col_action[1]] - s.v1;
      double m = an.m = s.ea_img[s.row_action[1]] - s.u1;
      an.stages[0] = detail::stage(p, 0, 1, Q + R, "psi0", "p,Q,R");
      an.stages[1] = detail::stage(R, -Q * m, 0, Q + R, "psi1", "R,Q,m");
      an.stages[2] = detail::stage(R, 0, 1, q + r, "psi2", "R,q,r");
      an.stages[3] = detail::stage(r, -q * M, 0, q + r, "psi3", "r,q,M");
      an.stages[4] = detail::stage(r, 0, 1, P + Q, "psi4", "r,P,Q");
      an.stages[5] = detail::stage(P, -Q * (q - m), 0, P + Q, "psi5", "P,Q,q,m");
      an.stages[6] = detail::stage(P, 0, 1, p + q, "psi6", "P,p,q");
      an.stages[7] = detail::stage(p, -q * (Q - M), 0, p + q, "psi7", "p,q,Q,M");
      an.composed8 = an.stages[0];
      for (int i = 1; i < 8; ++i) an.composed8 = compose(an.stages[i], an.composed8);
      double dmax = 0;
      for (int k : {1, 3, 5, 7}) {
        double t = detail::back_solve_threshold(an.stages, k, P);
        dmax = std::max(dmax, t);
      }
      an.d_c = an.d_C = dmax;  // below this the loop collapses into Cell V
      an.eight_cell_regime = std::isfinite(dmax) && dmax < P;
    }
    return an;
  }
  throw unsupported_configuration(
      config == ReturnConfig::MixedSink
          ? "no dihedral normalization matches the canonical mixed configuration"
          : "no dihedral normalization matches the canonical pure configuration");
}

enum class PathKind { FourCell, SixCell, EightCell };

inline PathKind classify_path_kind(const ReturnMapAnalysis& an, double d0) {
  if (an.config != ReturnConfig::MixedSink)
    throw input_error("path kinds are defined for the mixed configuration");
  if (d0 <= an.d_c) return PathKind::FourCell;
  if (d0 <= an.d_C) return PathKind::SixCell;
  return PathKind::EightCell;
}

// Evaluate the return map with the correct branch for the given d0.
inline double return_map_value(const ReturnMapAnalysis& an, double d0) {
  if (an.config == ReturnConfig::PureNe) return an.composed8(d0);
  switch (classify_path_kind(an, d0)) {
    case PathKind::EightCell:
      return an.composed8(d0);
    case PathKind::FourCell:
      return an.composed4(d0);
    case PathKind::SixCell: {
      // two variants split at the d1 = 0 threshold
      double t1 = detail::back_solve_threshold(an.stages, 0, an.section_length);
      return d0 <= t1 ? an.composed6_top(d0) : an.composed6_right(d0);
    }
  }
  return an.composed8(d0);
}

struct ContractionCertificate {
  bool ok = false;
  double sup_fprime = 0;
  double min_gap = 0;          // min of d - f(d) over the sampled section
  double analytic_bound = 0;   // ((P r) / ((P+Q)(q+r)))^2, always < 1
  double printed_form_bound = 0;
  int iterations_to_exit = -1; // steps of f until the full loop collapses
  double counterexample_d = -1;
};

inline ContractionCertificate verify_contraction(const ReturnMapAnalysis& an, int samples = 256) {
  ContractionCertificate cert;
  double lo = std::isfinite(an.d_C) ? an.d_C : 0;
  double hi = an.section_length;
  cert.analytic_bound = (an.P * an.r) / ((an.P + an.Q) * (an.q + an.r));
  cert.analytic_bound *= cert.analytic_bound;
  cert.printed_form_bound = an.P / (an.q + an.r) * std::pow(an.P / (an.P + an.Q), 2) *
                            std::pow(an.r / (an.q + an.r), 2);
  cert.ok = true;
  cert.min_gap = std::numeric_limits<double>::infinity();
  if (!(hi > lo)) {
    cert.ok = false;
    return cert;
  }
  for (int i = 1; i <= samples; ++i) {
    double d = lo + (hi - lo) * i / samples;
    double f = an.composed8(d);
    double fp = an.composed8.derivative(d);
    cert.sup_fprime = std::max(cert.sup_fprime, fp);
    cert.min_gap = std::min(cert.min_gap, d - f);
    if (!(fp > 0) || !(fp < 1) || !(f < d)) {
      cert.ok = false;
      if (cert.counterexample_d < 0) cert.counterexample_d = d;
    }
  }
  // iterate from the far end of the section until the loop collapses
  double d = an.section_length;
  int n = 0;
  while (d > an.d_C && n < 100000) {
    d = an.composed8(d);
    ++n;
    if (!(d < an.section_length)) break;
  }
  cert.iterations_to_exit = d <= an.d_C ? n : -1;
  if (cert.iterations_to_exit < 0) cert.ok = false;
  return cert;
}

// Simulated first return of the projected dynamic to the section
// {x = u1, y > v2}: the oracle the analytic composition is checked against.
inline std::optional<double> simulate_first_return(const ProjectedSquare<double>& sq,
                                                   double d0, int max_events = 4000) {
  IntegrateOptions opt;
  opt.max_events = max_events;
  TrajectoryRecord tr = pbrd_integrate(sq, sq.u1, sq.v2 + d0, opt);
  for (size_t i = 1; i < tr.events.size(); ++i) {
    const auto& ev = tr.events[i];
    if (std::abs(ev.x[0] - sq.u1) <= 1e-10 && ev.y[0] > sq.v2 + 1e-12)
      return ev.y[0] - sq.v2;
  }
  return std::nullopt;
}

// Appendix-style distance of a square point to (closed) Cell V.
inline double distance_to_cell_v(const ProjectedSquare<double>& sq, double x, double y) {
  double dx = std::max({sq.u1 - x, 0.0, x - sq.u2});
  double dy = std::max({sq.v1 - y, 0.0, y - sq.v2});
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace fictplay
