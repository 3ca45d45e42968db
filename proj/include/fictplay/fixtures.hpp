#pragma once

#include "fictplay/game.hpp"

namespace fictplay {
namespace fixtures {

using Q = mpq_class;

inline Mat<Q> qmat(std::initializer_list<std::initializer_list<std::pair<long, long>>> rows) {
  Mat<Q> m;
  for (auto& r : rows) {
    Vec<Q> row;
    for (auto& [n, d] : r) row.push_back(frac<Q>(n, d));
    m.push_back(row);
  }
  return m;
}

inline std::pair<long, long> e(long n, long d = 1) { return {n, d}; }

// Classic cyclic counterexample: identity vs the shifted identity, unique
// fully mixed equilibrium at the barycenter pair.
inline BimatrixGame<Q> shapley() {
  return BimatrixGame<Q>(
      qmat({{e(1), e(0), e(0)}, {e(0), e(1), e(0)}, {e(0), e(0), e(1)}}),
      qmat({{e(0), e(1), e(0)}, {e(0), e(0), e(1)}, {e(1), e(0), e(0)}}), "shapley");
}

// The fully mixed 3x3 game with a non-convergent orbit of a figure-eight
// shape.  The published payoffs carry payoff-level rounding that moves the
// equilibrium by a few 1e-3, so each row of A and column of B is shifted by
// the (exact, sub-0.006) constant that makes the published equilibrium
// x=(.288,.370,.342), y=(.335,.327,.338) exact; offsets of this form do not
// change either player's best-response structure elsewhere.
inline BimatrixGame<Q> ostrovski() {
  Mat<Q> a = qmat({{e(-135, 100), e(-126, 100), e(257, 100)},
                   {e(16, 100), e(-180, 100), e(158, 100)},
                   {e(-49, 100), e(-154, 100), e(198, 100)}});
  Mat<Q> b = qmat({{e(-183, 100), e(-287, 100), e(-336, 100)},
                   {e(-480, 100), e(-385, 100), e(-375, 100)},
                   {e(674, 100), e(659, 100), e(689, 100)}});
  Vec<Q> x = {frac<Q>(288, 1000), frac<Q>(370, 1000), frac<Q>(342, 1000)};
  Vec<Q> y = {frac<Q>(335, 1000), frac<Q>(327, 1000), frac<Q>(338, 1000)};
  Vec<Q> ay = mat_vec(a, y);
  Vec<Q> xb = vec_mat(x, b);
  Q ca = (ay[0] + ay[1] + ay[2]) / 3;
  Q cb = (xb[0] + xb[1] + xb[2]) / 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a[i][j] += ca - ay[i];
      b[i][j] += cb - xb[j];
    }
  return BimatrixGame<Q>(a, b, "ostrovski");
}

// Narrow-region game with the unique pure equilibrium (e3^A, e1^B).
inline BimatrixGame<Q> unique_pure() {
  return BimatrixGame<Q>(
      qmat({{e(0), e(99, 100), e(-51, 100)}, {e(0), e(0), e(1, 2)}, {e(1, 100), e(1, 2), e(0)}}),
      qmat({{e(0), e(-1), e(1)}, {e(-99, 100), e(0), e(-2)}, {e(1, 100), e(0), e(0)}}),
      "unique_pure");
}

// The quasi-supermodularity comparison game: without an internal indifferent
// point, yet B's matrix fails the monotone-differences condition.
inline BimatrixGame<Q> comparison_4_1() {
  return BimatrixGame<Q>(
      qmat({{e(1, 3), e(1, 3), e(0)}, {e(0), e(2, 3), e(2, 3)}, {e(-2, 3), e(0), e(1)}}),
      qmat({{e(0), e(2, 3), e(1, 3)}, {e(-2, 3), e(0), e(1, 3)}, {e(1), e(2, 3), e(0)}}),
      "comparison_4_1");
}

// One-parameter family A(k): at k = -2/3 the first two actions of the row
// player tie against e1^B and the equilibria form a segment on the e1e2 edge
// which the play orbits without settling; off the critical value the game is
// nondegenerate with a unique mixed equilibrium whose support pattern jumps.
inline BimatrixGame<Q> degenerate_family_a(const Q& k) {
  Mat<Q> a = qmat({{e(0), e(0), e(0)}, {e(0), e(1), e(-1)}, {e(-9), e(-7), e(3)}});
  a[1][0] = k + frac<Q>(2, 3);
  Mat<Q> b = qmat({{e(0), e(5), e(-15)}, {e(0), e(-15), e(5)}, {e(0), e(11), e(-41)}});
  return BimatrixGame<Q>(a, b, "degenerate_family_a");
}

// Second family: at k = -2/3 actions 1 and 3 of the row player tie against
// e1^B; the equilibrium segment has the pure sink (e1,e1) at one end and the
// play collapses onto that endpoint.  A persistent isolated mixed NE coexists.
inline BimatrixGame<Q> degenerate_family_b(const Q& k) {
  Mat<Q> a = qmat({{e(0), e(0), e(0)}, {e(-42), e(-42), e(14)}, {e(0), e(13), e(-26)}});
  a[2][0] = -(k + frac<Q>(2, 3));
  Mat<Q> b = qmat({{e(0), e(-11), e(-15)}, {e(0), e(-5), e(-10)}, {e(0), e(9), e(10)}});
  return BimatrixGame<Q>(a, b, "degenerate_family_b");
}

// Inverse-designed game whose projected square is the canonical unique-mixed
// sink arrangement: widths (.2,.25,.55), heights (.55,.1,.35) top-down,
// offsets M=.05, m=.08, NE image at the upper-left vertex of Cell V.
inline BimatrixGame<Q> canonical_mixed_sink() {
  return BimatrixGame<Q>(
      qmat({{e(0), e(0), e(0)}, {e(-27), e(33), e(-1)}, {e(21), e(-39), e(-1)}}),
      qmat({{e(0), e(15), e(-45)}, {e(0), e(-60), e(55)}, {e(0), e(2), e(-11)}}),
      "canonical_mixed_sink");
}

// Three equilibria: a mixed sink on (e2e3 x l12^B, e1e2 x l23^A), a mixed
// saddle on (e1e2 x l13^B, e1e3 x l12^A) and the pure (e1^A, e3^B).
inline BimatrixGame<Q> saddle_sink_pair() {
  return BimatrixGame<Q>(
      qmat({{e(-9), e(-14), e(11)}, {e(0), e(0), e(0)}, {e(-3), e(3), e(-4)}}),
      qmat({{e(0), e(-3), e(3)}, {e(0), e(2), e(-3)}, {e(0), e(-3), e(4)}}),
      "saddle_sink_pair");
}

// Rank-deficient indifference system on the row player's side: the two
// indifferent lines in Delta_B are parallel and the indifferent point is
// absent, exercising the parallel projection mode.
inline BimatrixGame<Q> parallel_lines() {
  return BimatrixGame<Q>(
      qmat({{e(0), e(0), e(0)}, {e(7), e(-9), e(-1)}, {e(13), e(-19), e(-3)}}),
      qmat({{e(0), e(15), e(-45)}, {e(0), e(-60), e(55)}, {e(0), e(2), e(-11)}}),
      "parallel_lines");
}

// The 4x4 symmetric payoff matrix with divergent symmetric best-response play.
inline Mat<Q> four_by_four() {
  return qmat({{e(0), e(-3), e(3, 2), e(1)},
               {e(1), e(0), e(-3), e(-15)},
               {e(-15), e(1), e(0), e(-1)},
               {e(-1), e(-39, 20), e(1), e(0)}});
}

inline BimatrixGame<Q> four_by_four_game() {
  Mat<Q> a = four_by_four();
  Mat<Q> b(4, Vec<Q>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b[i][j] = a[j][i];
  return BimatrixGame<Q>(a, b, "four_by_four");
}

}  // namespace fixtures
}  // namespace fictplay
