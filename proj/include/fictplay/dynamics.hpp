#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "fictplay/projection.hpp"

namespace fictplay {

enum class DynKind { Dfp, Cfp, Brd, Pbrd, SymBrd };

struct TrajectoryEvent {
  double t = 0;
  std::vector<double> x, y;  // y empty for single-space dynamics
  int ai = 0, bj = 0;        // profile active from this event to the next
  std::string boundary;      // indifference boundary crossed at this event
};

struct TrajectoryRecord {
  DynKind kind = DynKind::Cfp;
  std::vector<TrajectoryEvent> events;
  bool absorbed = false;        // no further region switch can occur
  bool hit_max_events = false;
  bool hit_horizon = false;
  std::vector<double> terminal_x, terminal_y;  // state at the end (limit if absorbed)
  double terminal_t = 0;
};

struct IntegrateOptions {
  double t0 = 1.0;
  double horizon = 1e18;    // CFP time units; BRD runs to t0 + 80
  int max_events = 40000;
};

namespace detail {

inline void renormalize(std::vector<double>& v) {
  double s = 0;
  for (double& w : v) {
    if (w < 0 && w > -1e-12) w = 0;
    s += w;
  }
  if (s > 0)
    for (double& w : v) w /= s;
}

constexpr double kSwitchGuard = 1.0 - 1e-13;

struct Crossing {
  double s = -1;       // segment parameter in (0,1); larger = earlier
  std::string boundary;
  bool immediate = false;
  int player = 0;      // 0 = A-side, 1 = B-side
  int to_action = -1;
};

}  // namespace detail

// Continuous fictitious play / best-response dynamic, integrated event to
// event.  Within a region product the state slides along the chord toward the
// current pure best responses; the next event is the earliest exact crossing
// of an indifference boundary.  CFP and BRD share the geometry and differ
// only in the clock: s = t0/t versus s = exp(t0 - t).
inline TrajectoryRecord integrate_continuous(const BimatrixGame<double>& g,
                                             std::vector<double> x, std::vector<double> y,
                                             bool cfp_clock, IntegrateOptions opt = {}) {
  TrajectoryRecord rec;
  rec.kind = cfp_clock ? DynKind::Cfp : DynKind::Brd;
  const double tol = 1e-12;
  detail::renormalize(x);
  detail::renormalize(y);

  // stationary start: an equilibrium profile stays put by convention
  {
    if (verify_equilibrium(g, x, y, 1e-12)) {
      rec.absorbed = true;
      rec.terminal_x = x;
      rec.terminal_y = y;
      rec.terminal_t = opt.t0;
      TrajectoryEvent ev;
      ev.t = opt.t0;
      ev.x = x;
      ev.y = y;
      ev.ai = best_response_lowest(g, Player::A, y, tol);
      ev.bj = best_response_lowest(g, Player::B, x, tol);
      rec.events.push_back(ev);
      return rec;
    }
  }

  double t = opt.t0;
  double horizon = cfp_clock ? opt.horizon : opt.t0 + 80.0;
  int ai = best_response_lowest(g, Player::A, y, tol);
  int bj = best_response_lowest(g, Player::B, x, tol);

  auto push_event = [&](const std::string& boundary) {
    TrajectoryEvent ev;
    ev.t = t;
    ev.x = x;
    ev.y = y;
    ev.ai = ai;
    ev.bj = bj;
    ev.boundary = boundary;
    rec.events.push_back(ev);
  };
  push_event("");

  std::string pending_boundary;
  int immediate_run = 0;
  while ((int)rec.events.size() < opt.max_events) {
    // next crossing over both players' candidate boundaries
    detail::Crossing best;
    auto consider = [&](int player, int cur, int cand, double h0, double hT) {
      if (!(hT < -1e-15)) return;
      double s;
      bool immediate = false;
      if (h0 <= 1e-15) {
        s = 1.0;  // boundary start drifting out: re-break the tie in place
        immediate = true;
      } else {
        s = hT / (hT - h0);
      }
      if (s <= 0 || s > 1) return;
      if (s > best.s) {
        best.s = s;
        best.player = player;
        best.to_action = cand;
        best.immediate = immediate;
        std::ostringstream os;
        os << (player == 0 ? "A:" : "B:") << cur + 1 << "-" << cand + 1;
        best.boundary = os.str();
      }
    };
    std::vector<double> ay = mat_vec(g.a, y);
    std::vector<double> xb = vec_mat(x, g.b);
    for (int i = 0; i < g.rows; ++i) {
      if (i == ai) continue;
      double h0 = ay[ai] - ay[i];
      double hT = g.a[ai][bj] - g.a[i][bj];
      consider(0, ai, i, h0, hT);
    }
    for (int j = 0; j < g.cols; ++j) {
      if (j == bj) continue;
      double h0 = xb[bj] - xb[j];
      double hT = g.b[ai][bj] - g.b[ai][j];
      consider(1, bj, j, h0, hT);
    }

    if (best.s < 0) {
      // absorbed: the chord runs to the pure profile and never leaves
      rec.absorbed = true;
      rec.terminal_x = unit_vertex<double>(g.rows, ai);
      rec.terminal_y = unit_vertex<double>(g.cols, bj);
      rec.terminal_t = horizon;
      return rec;
    }
    if (best.immediate || best.s >= detail::kSwitchGuard) {
      // zero-length switch: adopt the crossing action without advancing
      if (++immediate_run > 16) { rec.hit_max_events = true; break; }
      if (best.player == 0) ai = best.to_action;
      else bj = best.to_action;
      pending_boundary = best.boundary;
      continue;
    }
    immediate_run = 0;
    // advance to the crossing
    double s = best.s;
    double t_next = cfp_clock ? t / s : t - std::log(s);
    if (t_next >= horizon) {
      double sh = cfp_clock ? t / horizon : std::exp(t - horizon);
      for (int i = 0; i < g.rows; ++i) x[i] = (i == ai) + sh * (x[i] - (i == ai));
      for (int j = 0; j < g.cols; ++j) y[j] = (j == bj) + sh * (y[j] - (j == bj));
      detail::renormalize(x);
      detail::renormalize(y);
      rec.hit_horizon = true;
      rec.terminal_x = x;
      rec.terminal_y = y;
      rec.terminal_t = horizon;
      return rec;
    }
    for (int i = 0; i < g.rows; ++i) x[i] = (i == ai) + s * (x[i] - (i == ai));
    for (int j = 0; j < g.cols; ++j) y[j] = (j == bj) + s * (y[j] - (j == bj));
    detail::renormalize(x);
    detail::renormalize(y);
    t = t_next;
    if (best.player == 0) ai = best.to_action;
    else bj = best.to_action;
    // the tie at the crossing point may cascade; re-derive both actions
    {
      auto bra = best_response_set(g, Player::A, y, tol);
      auto brb = best_response_set(g, Player::B, x, tol);
      bool a_ok = false, b_ok = false;
      for (int v : bra) a_ok = a_ok || v == ai;
      for (int v : brb) b_ok = b_ok || v == bj;
      if (!a_ok) ai = bra.front();
      if (!b_ok) bj = brb.front();
    }
    std::string boundary = pending_boundary.empty() ? best.boundary
                                                    : pending_boundary + "," + best.boundary;
    pending_boundary.clear();
    push_event(boundary);
  }
  rec.hit_max_events = true;
  rec.terminal_x = x;
  rec.terminal_y = y;
  rec.terminal_t = t;
  return rec;
}

inline TrajectoryRecord cfp_integrate(const BimatrixGame<double>& g, std::vector<double> x,
                                      std::vector<double> y, IntegrateOptions opt = {}) {
  return integrate_continuous(g, std::move(x), std::move(y), true, opt);
}

inline TrajectoryRecord brd_integrate(const BimatrixGame<double>& g, std::vector<double> x,
                                      std::vector<double> y, IntegrateOptions opt = {}) {
  return integrate_continuous(g, std::move(x), std::move(y), false, opt);
}

// Discrete fictitious play; events mark action-profile switches.
inline TrajectoryRecord dfp_run(const BimatrixGame<double>& g, std::vector<double> x,
                                std::vector<double> y, long steps) {
  TrajectoryRecord rec;
  rec.kind = DynKind::Dfp;
  const double tol = 1e-12;
  detail::renormalize(x);
  detail::renormalize(y);
  int ai = -1, bj = -1;
  for (long t = 0; t < steps; ++t) {
    int a = best_response_lowest(g, Player::A, y, tol);
    int b = best_response_lowest(g, Player::B, x, tol);
    if (a != ai || b != bj) {
      ai = a;
      bj = b;
      TrajectoryEvent ev;
      ev.t = (double)t;
      ev.x = x;
      ev.y = y;
      ev.ai = ai;
      ev.bj = bj;
      rec.events.push_back(ev);
    }
    double w = 1.0 / (double)(t + 1);
    for (int i = 0; i < g.rows; ++i) x[i] = (1 - w) * x[i] + w * (i == a);
    for (int j = 0; j < g.cols; ++j) y[j] = (1 - w) * y[j] + w * (j == b);
  }
  rec.terminal_x = x;
  rec.terminal_y = y;
  rec.terminal_t = (double)steps;
  return rec;
}

// Projected best-response dynamic on the nine-cell square.
inline TrajectoryRecord pbrd_integrate(const ProjectedSquare<double>& sq, double px, double py,
                                       IntegrateOptions opt = {}) {
  TrajectoryRecord rec;
  rec.kind = DynKind::Pbrd;
  double t = opt.t0;
  double horizon = opt.t0 + 80.0;

  auto column_of = [&](double v) {
    // boundary values break the tie by the lower action index
    if (std::abs(v - sq.u1) < 1e-15)
      return sq.col_action[0] < sq.col_action[1] ? 0 : 1;
    if (std::abs(v - sq.u2) < 1e-15)
      return sq.col_action[1] < sq.col_action[2] ? 1 : 2;
    if (v < sq.u1) return 0;
    if (v < sq.u2) return 1;
    return 2;
  };
  auto row_of = [&](double v) {
    if (std::abs(v - sq.v1) < 1e-15)
      return sq.row_action[0] < sq.row_action[1] ? 0 : 1;
    if (std::abs(v - sq.v2) < 1e-15)
      return sq.row_action[1] < sq.row_action[2] ? 1 : 2;
    if (v < sq.v1) return 0;
    if (v < sq.v2) return 1;
    return 2;
  };

  int col = column_of(px), row = row_of(py);
  auto push_event = [&](const std::string& boundary) {
    TrajectoryEvent ev;
    ev.t = t;
    ev.x = {px};
    ev.y = {py};
    ev.ai = sq.row_action[row];
    ev.bj = sq.col_action[col];
    ev.boundary = boundary;
    rec.events.push_back(ev);
  };
  push_event("");

  std::string pending;
  int immediate_run = 0;
  while ((int)rec.events.size() < opt.max_events) {
    double tx = sq.ea_img[sq.row_action[row]];
    double ty = sq.eb_img[sq.col_action[col]];
    // crossings of the four dividers along the chord toward (tx, ty);
    // x crossings change the column, y crossings change the row
    detail::Crossing best;
    struct Wall { double v; int side_lo, side_hi; const char* tag; int axis; };
    const Wall walls[4] = {
        {sq.u1, 0, 1, "x:u1", 0},
        {sq.u2, 1, 2, "x:u2", 0},
        {sq.v1, 0, 1, "y:v1", 1},
        {sq.v2, 1, 2, "y:v2", 1},
    };
    for (const Wall& w : walls) {
      double z0 = w.axis == 0 ? px : py;
      double zT = w.axis == 0 ? tx : ty;
      int cur = w.axis == 0 ? col : row;
      double d0 = z0 - w.v, dT = zT - w.v;
      if (d0 > 1e-15 && dT < -1e-15) {
        double s = dT / (dT - d0);
        if (s > best.s) best = {s, w.tag, false, w.axis, w.side_lo};
      } else if (d0 < -1e-15 && dT > 1e-15) {
        double s = dT / (dT - d0);
        if (s > best.s) best = {s, w.tag, false, w.axis, w.side_hi};
      } else if (std::abs(d0) <= 1e-15) {
        int drift_side = dT > 1e-15 ? w.side_hi : (dT < -1e-15 ? w.side_lo : cur);
        if (drift_side != cur && 1.0 > best.s)
          best = {1.0, w.tag, true, w.axis, drift_side};
      }
    }

    if (best.s < 0) {
      rec.absorbed = true;
      rec.terminal_x = {tx};
      rec.terminal_y = {ty};
      rec.terminal_t = horizon;
      return rec;
    }
    if (best.immediate) {
      if (++immediate_run > 16) { rec.hit_max_events = true; break; }
      if (best.player == 0) col = best.to_action;
      else row = best.to_action;
      pending = best.boundary;
      continue;
    }
    immediate_run = 0;
    double s = best.s;
    double t_next = t - std::log(s);
    if (t_next >= horizon) {
      double sh = std::exp(t - horizon);
      px = tx + sh * (px - tx);
      py = ty + sh * (py - ty);
      rec.hit_horizon = true;
      rec.terminal_x = {px};
      rec.terminal_y = {py};
      rec.terminal_t = horizon;
      return rec;
    }
    px = tx + s * (px - tx);
    py = ty + s * (py - ty);
    t = t_next;
    if (best.player == 0) col = best.to_action;
    else row = best.to_action;
    std::string boundary = pending.empty() ? best.boundary : pending + "," + best.boundary;
    pending.clear();
    push_event(boundary);
  }
  rec.hit_max_events = true;
  rec.terminal_x = {px};
  rec.terminal_y = {py};
  rec.terminal_t = t;
  return rec;
}

// Symmetric best-response dynamic xdot = BR(x) - x on a single simplex
// (B = A^T and equal starts reduce the bimatrix BRD to this).
inline TrajectoryRecord sym_brd_integrate(const Mat<double>& a, std::vector<double> x,
                                          IntegrateOptions opt = {}) {
  TrajectoryRecord rec;
  rec.kind = DynKind::SymBrd;
  const int n = (int)a.size();
  detail::renormalize(x);
  double t = opt.t0;
  double horizon = opt.t0 + 80.0;

  auto br_lowest = [&](const std::vector<double>& z) {
    std::vector<double> u = mat_vec(a, z);
    int best = 0;
    for (int i = 1; i < n; ++i)
      if (u[i] > u[best] + 1e-15) best = i;
    // exact ties fall to the lowest index
    for (int i = 0; i < best; ++i)
      if (u[i] >= u[best] - 1e-15) return i;
    return best;
  };
  int act = br_lowest(x);
  auto push_event = [&](const std::string& boundary) {
    TrajectoryEvent ev;
    ev.t = t;
    ev.x = x;
    ev.ai = act;
    ev.bj = act;
    ev.boundary = boundary;
    rec.events.push_back(ev);
  };
  push_event("");
  std::string pending;
  int immediate_run = 0;
  while ((int)rec.events.size() < opt.max_events) {
    std::vector<double> u = mat_vec(a, x);
    detail::Crossing best;
    for (int i = 0; i < n; ++i) {
      if (i == act) continue;
      double h0 = u[act] - u[i];
      double hT = a[act][act] - a[i][act];
      if (!(hT < -1e-15)) continue;
      if (h0 <= 1e-15) {
        if (1.0 > best.s) {
          best.s = 1.0;
          best.immediate = true;
          best.to_action = i;
          std::ostringstream os;
          os << "A:" << act + 1 << "-" << i + 1;
          best.boundary = os.str();
        }
        continue;
      }
      double s = hT / (hT - h0);
      if (s > 0 && s < 1 && s > best.s) {
        best.s = s;
        best.immediate = false;
        best.to_action = i;
        std::ostringstream os;
        os << "A:" << act + 1 << "-" << i + 1;
        best.boundary = os.str();
      }
    }
    if (best.s < 0) {
      rec.absorbed = true;
      rec.terminal_x = unit_vertex<double>(n, act);
      rec.terminal_t = horizon;
      return rec;
    }
    if (best.immediate) {
      if (++immediate_run > 16) { rec.hit_max_events = true; break; }
      act = best.to_action;
      pending = best.boundary;
      continue;
    }
    immediate_run = 0;
    double s = best.s;
    double t_next = t - std::log(s);
    if (t_next >= horizon) {
      double sh = std::exp(t - horizon);
      for (int i = 0; i < n; ++i) x[i] = (i == act) + sh * (x[i] - (i == act));
      detail::renormalize(x);
      rec.hit_horizon = true;
      rec.terminal_x = x;
      rec.terminal_t = horizon;
      return rec;
    }
    for (int i = 0; i < n; ++i) x[i] = (i == act) + s * (x[i] - (i == act));
    detail::renormalize(x);
    t = t_next;
    act = best.to_action;
    std::string boundary = pending.empty() ? best.boundary : pending + "," + best.boundary;
    pending.clear();
    push_event(boundary);
  }
  rec.hit_max_events = true;
  rec.terminal_x = x;
  rec.terminal_t = t;
  return rec;
}

// Lift a face point into the simplex along the projection ray, run the
// symmetric dynamic and report the first full-revolution crossing of the
// pairwise indifference line {u_i = u_j} on the face (at least min_switches
// region changes after the start, which itself may sit on the line).
inline std::optional<std::pair<double, double>> sym_face_first_return(
    const Mat<double>& a, const FaceProjection<double>& fp, std::pair<double, double> start_xy,
    int sec_i = 0, int sec_j = 1, int max_events = 400, int min_switches = 3) {
  auto z3 = face_frame_point(start_xy.first, start_xy.second);
  std::vector<double> z4 = {z3[0], z3[1], z3[2], 0.0};
  std::vector<double> x0(4);
  bool lifted = false;
  for (double t = 1.02; t <= 2.0 && !lifted; t += 0.01) {
    bool ok = true;
    for (int c = 0; c < 4; ++c) {
      x0[c] = fp.center[c] + t * (z4[c] - fp.center[c]);
      if (x0[c] < 1e-9 || x0[c] > 1 - 1e-9) ok = false;
    }
    lifted = ok;
  }
  if (!lifted) return std::nullopt;
  IntegrateOptions opt;
  opt.max_events = max_events;
  TrajectoryRecord tr = sym_brd_integrate(a, x0, opt);
  auto section = [&](const std::vector<double>& z) {
    std::vector<double> d = {z[0] - fp.center[0], z[1] - fp.center[1], z[2] - fp.center[2],
                             -fp.center[3]};
    auto s = mat_vec(a, d);
    return s[sec_i] - s[sec_j];
  };
  std::vector<double> prev = project_to_face(fp, tr.events[0].x);
  double fprev = section(prev);
  for (size_t k = 1; k < tr.events.size(); ++k) {
    std::vector<double> cur = project_to_face(fp, tr.events[k].x);
    double fcur = section(cur);
    if ((fprev > 0) != (fcur > 0) && (int)k - 1 >= min_switches) {
      double s = fprev / (fprev - fcur);
      std::vector<double> cr(3);
      for (int c = 0; c < 3; ++c) cr[c] = prev[c] + s * (cur[c] - prev[c]);
      double dist2 = 0;
      for (int c = 0; c < 3; ++c) dist2 += (cr[c] - z3[c]) * (cr[c] - z3[c]);
      if (dist2 > 1e-8) return face_frame_xy(cr);
    }
    prev = cur;
    fprev = fcur;
  }
  return std::nullopt;
}

// ---- limit classification ---------------------------------------------------

enum class LimitTag {
  ConvergedToNe,
  ConvergedToPoint,
  LimitCycle,
  ApproachesContinuum,
  Divergent,
  Undetermined
};

struct LimitEvidence {
  double terminal_distance = -1;
  int nearest_record = -1;
  int tail_profile_count = 0;
  double tail_displacement = 0;
  int period = 0;
  double tail_segment_distance = -1;  // max late-tail distance to the nearest continuum
};

struct LimitClassification {
  LimitTag tag = LimitTag::Undetermined;
  int record_index = -1;
  LimitEvidence evidence;
};

struct ClassifyOptions {
  double epsilon_conv = 1e-6;
  int tail_window = 200;
};

inline double profile_distance(const std::vector<double>& x, const std::vector<double>& y,
                               const EquilibriumRecord<double>& rec) {
  auto d2 = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  };
  if (rec.kind != EqKind::ContinuumSegment) return std::sqrt(d2(x, rec.x) + d2(y, rec.y));
  // distance to the segment between the endpoint profiles
  double num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double dir = rec.x_end2[i] - rec.x_end1[i];
    num += (x[i] - rec.x_end1[i]) * dir;
    den += dir * dir;
  }
  for (size_t i = 0; i < y.size(); ++i) {
    double dir = rec.y_end2[i] - rec.y_end1[i];
    num += (y[i] - rec.y_end1[i]) * dir;
    den += dir * dir;
  }
  double t = den > 0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
  double s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double p = rec.x_end1[i] + t * (rec.x_end2[i] - rec.x_end1[i]);
    s += (x[i] - p) * (x[i] - p);
  }
  for (size_t i = 0; i < y.size(); ++i) {
    double p = rec.y_end1[i] + t * (rec.y_end2[i] - rec.y_end1[i]);
    s += (y[i] - p) * (y[i] - p);
  }
  return std::sqrt(s);
}

template <class T>
std::vector<EquilibriumRecord<double>> records_to_double(
    const std::vector<EquilibriumRecord<T>>& recs) {
  std::vector<EquilibriumRecord<double>> out;
  for (auto& r : recs) {
    EquilibriumRecord<double> d;
    auto conv = [](const Vec<T>& v) {
      std::vector<double> o;
      for (auto& w : v) o.push_back(to_double(w));
      return o;
    };
    d.x = conv(r.x);
    d.y = conv(r.y);
    d.x_end1 = conv(r.x_end1);
    d.y_end1 = conv(r.y_end1);
    d.x_end2 = conv(r.x_end2);
    d.y_end2 = conv(r.y_end2);
    d.support_a = r.support_a;
    d.support_b = r.support_b;
    d.kind = r.kind;
    d.stability = r.stability;
    out.push_back(d);
  }
  return out;
}

inline LimitClassification classify_limit(const TrajectoryRecord& traj,
                                          const std::vector<EquilibriumRecord<double>>& eqs,
                                          ClassifyOptions opt = {}) {
  LimitClassification out;
  LimitEvidence& ev = out.evidence;
  const auto& events = traj.events;
  if (events.empty()) return out;

  int w = std::min<int>(opt.tail_window, (int)events.size());
  int start = (int)events.size() - w;

  // tail displacement via the bounding box of visited states
  std::vector<double> lo, hi;
  auto absorb_point = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z = x;
    z.insert(z.end(), y.begin(), y.end());
    if (lo.empty()) { lo = z; hi = z; return; }
    for (size_t i = 0; i < z.size(); ++i) {
      lo[i] = std::min(lo[i], z[i]);
      hi[i] = std::max(hi[i], z[i]);
    }
  };
  std::vector<int> tail_profiles;
  for (int i = start; i < (int)events.size(); ++i) {
    absorb_point(events[i].x, events[i].y);
    tail_profiles.push_back(events[i].ai * 64 + events[i].bj);
  }
  absorb_point(traj.terminal_x, traj.terminal_y);
  double disp2 = 0;
  for (size_t i = 0; i < lo.size(); ++i) disp2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  ev.tail_displacement = std::sqrt(disp2);

  if (traj.absorbed) {
    ev.tail_profile_count = 1;
  } else {
    std::vector<int> uniq = tail_profiles;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    ev.tail_profile_count = (int)uniq.size();
  }

  for (int i = 0; i < (int)eqs.size(); ++i) {
    double d = profile_distance(traj.terminal_x, traj.terminal_y, eqs[i]);
    if (ev.terminal_distance < 0 || d < ev.terminal_distance) {
      ev.terminal_distance = d;
      ev.nearest_record = i;
    }
  }

  // near a continuum while still sweeping along it
  double noncollapse = 10 * opt.epsilon_conv;
  for (int i = 0; i < (int)eqs.size(); ++i) {
    if (eqs[i].kind != EqKind::ContinuumSegment) continue;
    double dterm = profile_distance(traj.terminal_x, traj.terminal_y, eqs[i]);
    if (dterm < opt.epsilon_conv && ev.tail_displacement > noncollapse && !traj.absorbed) {
      // reject when the motion has collapsed onto one endpoint
      out.tag = LimitTag::ApproachesContinuum;
      out.record_index = i;
      ev.tail_segment_distance = dterm;
      return out;
    }
  }

  bool count_ok = ev.tail_profile_count == 1 || ev.tail_profile_count == 2 ||
                  ev.tail_profile_count == 4;
  if (ev.nearest_record >= 0 && ev.terminal_distance < opt.epsilon_conv && count_ok) {
    if (!traj.absorbed && ev.tail_displacement > noncollapse &&
        eqs[ev.nearest_record].kind == EqKind::ContinuumSegment) {
      out.tag = LimitTag::ApproachesContinuum;
    } else {
      out.tag = LimitTag::ConvergedToNe;
    }
    out.record_index = ev.nearest_record;
    return out;
  }

  // periodic action-profile tail with non-collapsing motion
  if (!traj.absorbed && (int)tail_profiles.size() >= 12 &&
      ev.tail_displacement > noncollapse) {
    int n = (int)tail_profiles.size();
    for (int p = 2; p <= n / 2; ++p) {
      bool ok = true;
      for (int i = n - 1; i >= n - (n / 2); --i)
        if (tail_profiles[i] != tail_profiles[i - p]) { ok = false; break; }
      if (ok) {
        ev.period = p;
        out.tag = LimitTag::LimitCycle;
        return out;
      }
    }
  }

  if (ev.nearest_record >= 0 && ev.terminal_distance < opt.epsilon_conv) {
    out.tag = LimitTag::ConvergedToNe;  // converged but with an odd switch pattern
    out.record_index = ev.nearest_record;
    return out;
  }
  out.tag = LimitTag::Undetermined;
  return out;
}

// Trajectory CSV: one row per event (plus optional resampled rows).
inline void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec) {
  size_t nx = rec.events.empty() ? rec.terminal_x.size() : rec.events[0].x.size();
  size_t ny = rec.events.empty() ? rec.terminal_y.size() : rec.events[0].y.size();
  os << "time";
  for (size_t i = 0; i < nx; ++i) os << ",x" << i + 1;
  for (size_t j = 0; j < ny; ++j) os << ",y" << j + 1;
  os << ",action_a,action_b,boundary,resampled\n";
  os.precision(17);
  for (auto& ev : rec.events) {
    os << ev.t;
    for (double v : ev.x) os << "," << v;
    for (double v : ev.y) os << "," << v;
    os << "," << ev.ai + 1 << "," << ev.bj + 1 << "," << ev.boundary << ",0\n";
  }
}

}  // namespace fictplay
