#pragma once

#include <optional>

#include "fictplay/game.hpp"

namespace fictplay {

enum class EqKind { Pure, Mixed, ContinuumSegment };
enum class Stability { Pure, Saddle, Sink, Unclassified };

template <class T>
struct EquilibriumRecord {
  Vec<T> x, y;
  std::vector<int> support_a, support_b;
  EqKind kind = EqKind::Mixed;
  Stability stability = Stability::Unclassified;
  // continuum segments carry both endpoint profiles; (x,y) is the midpoint
  Vec<T> x_end2, y_end2;  // second endpoint (first is (x,y) fields x_end1/y_end1)
  Vec<T> x_end1, y_end1;
};

template <class T>
struct EquilibriumSet {
  std::vector<EquilibriumRecord<T>> records;
  bool degenerate_unsupported = false;  // a >=2 dimensional solution set was met
  std::vector<std::string> notes;
};

namespace detail {

// Solve for a strategy of `owner` supported on `supp` that equalizes the
// opponent's payoffs across `opp_supp`.  Unknowns are the supported weights.
template <class T>
LinearSolution<T> solve_equalizing(const BimatrixGame<T>& g, Player owner,
                                   const std::vector<int>& supp,
                                   const std::vector<int>& opp_supp) {
  const int k = (int)supp.size();
  Mat<T> m;
  Vec<T> rhs;
  // payoff of opponent action t against owner pure action s
  auto coeff = [&](int opp_action, int own_action) -> T {
    if (owner == Player::A) return g.b[own_action][opp_action];
    return g.a[opp_action][own_action];
  };
  for (size_t t = 1; t < opp_supp.size(); ++t) {
    Vec<T> row(k, T(0));
    for (int c = 0; c < k; ++c)
      row[c] = coeff(opp_supp[t], supp[c]) - coeff(opp_supp[0], supp[c]);
    m.push_back(row);
    rhs.push_back(T(0));
  }
  m.push_back(Vec<T>(k, T(1)));
  rhs.push_back(T(1));
  return solve_linear(m, rhs);
}

template <class T>
Vec<T> expand(const Vec<T>& compact, const std::vector<int>& supp, int n) {
  Vec<T> full = zeros<T>(n);
  for (size_t c = 0; c < supp.size(); ++c) full[supp[c]] = compact[c];
  return full;
}

template <class T>
bool strictly_positive_on(const Vec<T>& x, const std::vector<int>& supp, const T& tol) {
  for (int i : supp)
    if (!(x[i] > tol)) return false;
  return true;
}

template <class T>
bool same_profile(const Vec<T>& a, const Vec<T>& b, const T& tol) {
  for (size_t i = 0; i < a.size(); ++i)
    if (abs_val(T(a[i] - b[i])) > tol) return false;
  return true;
}

// Clip the 1-parameter family base + t*dir (supported weights of `owner`)
// to the set where the profile stays a best-response-compatible equilibrium
// against the fixed opponent strategy.
template <class T>
std::optional<std::pair<T, T>> clip_family(const BimatrixGame<T>& g, Player owner,
                                           const std::vector<int>& supp,
                                           const Vec<T>& base, const Vec<T>& dir,
                                           const std::vector<int>& opp_supp) {
  // Constraints, all affine in t:
  //  (1) supported weights >= 0
  //  (2) opponent's supported payoff level >= every off-support payoff
  const int n = g.actions(owner);
  Vec<T> bfull = expand(base, supp, n);
  Vec<T> dfull = expand(dir, supp, n);
  std::vector<std::pair<T, T>> cons;  // value = c0 + t*c1 must stay >= 0
  for (int i : supp) cons.push_back({bfull[i], dfull[i]});
  Player opp = other(owner);
  Vec<T> u0 = action_payoffs(g, opp, bfull);
  Vec<T> u1 = action_payoffs(g, opp, dfull);  // payoffs are linear in the strategy
  int ref = opp_supp[0];
  for (int j = 0; j < g.actions(opp); ++j) {
    bool in = false;
    for (int t : opp_supp) in = in || (t == j);
    if (in) continue;
    cons.push_back({u0[ref] - u0[j], u1[ref] - u1[j]});
  }
  // intersect half-lines
  bool lo_set = false, hi_set = false;
  T lo(0), hi(0);
  const T tol = num_traits<T>::tol();
  for (auto& [c0, c1] : cons) {
    int s = sgn(c1, tol);
    if (s == 0) {
      if (sgn(c0, tol) < 0) return std::nullopt;
      continue;
    }
    T bound = -c0 / c1;
    if (s > 0) {
      if (!lo_set || bound > lo) { lo = bound; lo_set = true; }
    } else {
      if (!hi_set || bound < hi) { hi = bound; hi_set = true; }
    }
  }
  if (!lo_set || !hi_set) return std::nullopt;  // unbounded family: not a simplex segment
  if (!(hi > lo)) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace detail

// Support enumeration over all support pairs, increasing total size,
// lexicographic within a size.  Degenerate pairs with a one-dimensional
// consistent solution set become continuum segments.
template <class T>
EquilibriumSet<T> enumerate_equilibria(const BimatrixGame<T>& g) {
  const T tol = num_traits<T>::tol();
  EquilibriumSet<T> out;

  std::vector<std::vector<int>> supports_a, supports_b;
  for (int mask = 1; mask < (1 << g.rows); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < g.rows; ++i)
      if (mask & (1 << i)) s.push_back(i);
    supports_a.push_back(s);
  }
  for (int mask = 1; mask < (1 << g.cols); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < g.cols; ++j)
      if (mask & (1 << j)) s.push_back(j);
    supports_b.push_back(s);
  }
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i < (int)supports_a.size(); ++i)
    for (int j = 0; j < (int)supports_b.size(); ++j) order.push_back({i, j});
  std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) {
    size_t sl = supports_a[l.first].size() + supports_b[l.second].size();
    size_t sr = supports_a[r.first].size() + supports_b[r.second].size();
    if (sl != sr) return sl < sr;
    if (supports_a[l.first] != supports_a[r.first])
      return supports_a[l.first] < supports_a[r.first];
    return supports_b[l.second] < supports_b[r.second];
  });

  auto on_segment = [&](const EquilibriumRecord<T>& rec, const Vec<T>& x, const Vec<T>& y) {
    T slack = num_traits<T>::exact ? T(0) : T(1e-7);
    T band = slack + tol;
    auto between = [&](const Vec<T>& p, const Vec<T>& a, const Vec<T>& b) {
      for (size_t i = 0; i < p.size(); ++i) {
        T lo = a[i] < b[i] ? a[i] : b[i];
        T hi = a[i] < b[i] ? b[i] : a[i];
        if (p[i] < lo - band || p[i] > hi + band) return false;
      }
      return true;
    };
    return between(x, rec.x_end1, rec.x_end2) && between(y, rec.y_end1, rec.y_end2);
  };

  auto already_have = [&](const Vec<T>& x, const Vec<T>& y) {
    T near = num_traits<T>::exact ? T(0) : T(1e-7);
    for (auto& rec : out.records) {
      if (rec.kind == EqKind::ContinuumSegment) {
        if (on_segment(rec, x, y)) return true;
        continue;
      }
      if (detail::same_profile(rec.x, x, T(near + tol)) &&
          detail::same_profile(rec.y, y, T(near + tol)))
        return true;
    }
    return false;
  };

  for (auto [ia, ib] : order) {
    const auto& sa = supports_a[ia];
    const auto& sb = supports_b[ib];
    auto solx = detail::solve_equalizing(g, Player::A, sa, sb);
    if (solx.status == SolveStatus::Inconsistent) continue;
    auto soly = detail::solve_equalizing(g, Player::B, sb, sa);
    if (soly.status == SolveStatus::Inconsistent) continue;

    int free_dims = (int)solx.nullspace.size() + (int)soly.nullspace.size();
    if (free_dims == 0) {
      Vec<T> x = detail::expand(solx.particular, sa, g.rows);
      Vec<T> y = detail::expand(soly.particular, sb, g.cols);
      if (!detail::strictly_positive_on(x, sa, tol)) continue;
      if (!detail::strictly_positive_on(y, sb, tol)) continue;
      if (!verify_equilibrium(g, x, y, num_traits<T>::exact ? T(0) : T(1e-9))) continue;
      if (already_have(x, y)) continue;
      EquilibriumRecord<T> rec;
      rec.x = x;
      rec.y = y;
      rec.support_a = sa;
      rec.support_b = sb;
      rec.kind = (sa.size() == 1 && sb.size() == 1) ? EqKind::Pure : EqKind::Mixed;
      rec.stability = rec.kind == EqKind::Pure ? Stability::Pure : Stability::Unclassified;
      out.records.push_back(rec);
      continue;
    }
    if (free_dims >= 2) {
      // only note it when the family actually meets the simplex
      out.degenerate_unsupported = true;
      out.notes.push_back("support pair with a >=2-dimensional solution family skipped");
      continue;
    }
    // one-dimensional family on exactly one side
    bool family_on_a = !solx.nullspace.empty();
    Player owner = family_on_a ? Player::A : Player::B;
    const auto& supp = family_on_a ? sa : sb;
    const auto& opp_supp = family_on_a ? sb : sa;
    const auto& sol = family_on_a ? solx : soly;
    Vec<T> fixed_side = family_on_a ? detail::expand(soly.particular, sb, g.cols)
                                    : detail::expand(solx.particular, sa, g.rows);
    if (!detail::strictly_positive_on(fixed_side, opp_supp, tol)) continue;
    auto span = detail::clip_family(g, owner, supp, sol.particular, sol.nullspace[0], opp_supp);
    if (!span) continue;
    auto [t0, t1] = *span;
    auto at = [&](const T& t) {
      Vec<T> w = sol.particular;
      for (size_t c = 0; c < w.size(); ++c) w[c] += t * sol.nullspace[0][c];
      return detail::expand(w, supp, g.actions(owner));
    };
    Vec<T> end1 = at(t0), end2 = at(t1);
    T tm = (t0 + t1) / T(2);
    Vec<T> mid = at(tm);
    Vec<T> x1 = family_on_a ? end1 : fixed_side;
    Vec<T> y1 = family_on_a ? fixed_side : end1;
    Vec<T> x2 = family_on_a ? end2 : fixed_side;
    Vec<T> y2 = family_on_a ? fixed_side : end2;
    T vtol = num_traits<T>::exact ? T(0) : T(1e-9);
    if (!verify_equilibrium(g, x1, y1, vtol) || !verify_equilibrium(g, x2, y2, vtol))
      continue;
    EquilibriumRecord<T> rec;
    rec.kind = EqKind::ContinuumSegment;
    rec.x = family_on_a ? mid : fixed_side;
    rec.y = family_on_a ? fixed_side : mid;
    rec.x_end1 = x1;
    rec.y_end1 = y1;
    rec.x_end2 = x2;
    rec.y_end2 = y2;
    rec.support_a = support(rec.x, tol);
    rec.support_b = support(rec.y, tol);
    rec.stability = Stability::Unclassified;
    // drop isolated records that sit on this segment
    std::vector<EquilibriumRecord<T>> kept;
    for (auto& r : out.records) {
      bool absorbed = r.kind != EqKind::ContinuumSegment && on_segment(rec, r.x, r.y);
      if (!absorbed) kept.push_back(r);
    }
    kept.push_back(rec);
    out.records = kept;
  }
  return out;
}

}  // namespace fictplay
