#include <doctest.h>

#include "fictplay/experiments.hpp"
#include "fictplay/fixtures.hpp"
#include "fictplay/io.hpp"

using namespace fictplay;
using Q = mpq_class;

TEST_CASE("expected payoffs on the cycling game") {
  auto g = fixtures::shapley();
  Vec<Q> bary = {frac<Q>(1, 3), frac<Q>(1, 3), frac<Q>(1, 3)};
  auto [ua, ub] = expected_payoff(g, bary, bary);
  CHECK(ua == frac<Q>(1, 3));
  CHECK(ub == frac<Q>(1, 3));
  auto e1 = unit_vertex<Q>(3, 0);
  auto [pa, pb] = expected_payoff(g, e1, e1);
  CHECK(pa == Q(1));
  CHECK(pb == Q(0));
}

TEST_CASE("pure-profile payoff is the matrix entry") {
  auto g = fixtures::comparison_4_1();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto [ua, ub] = expected_payoff(g, unit_vertex<Q>(3, i), unit_vertex<Q>(3, j));
      CHECK(ua == g.a[i][j]);
      CHECK(ub == g.b[i][j]);
    }
}

TEST_CASE("best responses") {
  auto g = fixtures::shapley();
  Vec<Q> bary = {frac<Q>(1, 3), frac<Q>(1, 3), frac<Q>(1, 3)};
  CHECK(best_response_set(g, Player::A, bary, Q(0)) == std::vector<int>{0, 1, 2});
  CHECK(best_response_set(g, Player::A, unit_vertex<Q>(3, 0), Q(0)) == std::vector<int>{0});

  auto eq12 = fixtures::unique_pure();
  // against e3^A the column player's payoffs are the third row of B
  CHECK(best_response_set(eq12, Player::B, unit_vertex<Q>(3, 2), Q(0)) == std::vector<int>{0});
}

TEST_CASE("equilibrium verification") {
  auto g = fixtures::shapley();
  Vec<Q> bary = {frac<Q>(1, 3), frac<Q>(1, 3), frac<Q>(1, 3)};
  CHECK(verify_equilibrium(g, bary, bary, Q(0)));
  CHECK_FALSE(verify_equilibrium(g, unit_vertex<Q>(3, 0), unit_vertex<Q>(3, 0), Q(0)));

  auto ost = to_double_game(fixtures::ostrovski());
  CHECK(verify_equilibrium(ost, {0.288, 0.370, 0.342}, {0.335, 0.327, 0.338}, 1e-2));
}

TEST_CASE("degeneracy detection across the critical parameter") {
  auto crit = fixtures::degenerate_family_a(frac<Q>(-2, 3));
  auto rep = check_nondegenerate(crit, Q(0));
  CHECK_FALSE(rep.nondegenerate);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].pure_strategy_of == Player::B);
  CHECK(rep.violations[0].action == 0);

  CHECK(check_nondegenerate(fixtures::degenerate_family_a(Q(0)), Q(0)).nondegenerate);
  CHECK(check_nondegenerate(fixtures::shapley(), Q(0)).nondegenerate);
}

TEST_CASE("monotone-difference conditions") {
  auto g = fixtures::comparison_4_1();
  CHECK(quasi_supermodular_matrix_a(g.a));
  CHECK_FALSE(quasi_supermodular_matrix_b(g.b));
  CHECK_FALSE(is_quasi_supermodular(g));

  Mat<Q> id3 = {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}};
  BimatrixGame<Q> coord(id3, id3, "coord");
  // exhaustive evaluation of the strict implications
  bool qa = true, qb = true;
  for (int i = 0; i < 3; ++i)
    for (int i2 = i + 1; i2 < 3; ++i2)
      for (int j = 0; j < 3; ++j)
        for (int j2 = j + 1; j2 < 3; ++j2) {
          if (coord.a[i2][j] > coord.a[i][j] && !(coord.a[i2][j2] > coord.a[i][j2])) qa = false;
          if (coord.b[i][j2] > coord.b[i][j] && !(coord.b[i2][j2] > coord.b[i2][j])) qb = false;
        }
  CHECK(quasi_supermodular_matrix_a(coord.a) == qa);
  CHECK(quasi_supermodular_matrix_b(coord.b) == qb);
}

TEST_CASE("action relabeling matches the displayed matrices") {
  auto g = fixtures::comparison_4_1();
  ActionPermutationPair rows_only = identity_permutation(3, 3);
  rows_only.sigma = {2, 0, 1};  // new row i takes old row sigma[i]
  auto gs = apply_equivalence(g, Q(1), zeros<Q>(3), Q(1), zeros<Q>(3), rows_only);
  Mat<Q> expected_a = {{frac<Q>(-2, 3), Q(0), Q(1)},
                       {frac<Q>(1, 3), frac<Q>(1, 3), Q(0)},
                       {Q(0), frac<Q>(2, 3), frac<Q>(2, 3)}};
  Mat<Q> expected_b = {{Q(1), frac<Q>(2, 3), Q(0)},
                       {frac<Q>(-2, 3), Q(0), frac<Q>(1, 3)},
                       {Q(0), frac<Q>(2, 3), frac<Q>(1, 3)}};
  CHECK(gs.a == expected_a);
  CHECK(gs.b == expected_b);

  ActionPermutationPair both;
  both.sigma = {1, 0, 2};
  both.tau = {2, 1, 0};
  auto gst = apply_equivalence(g, Q(1), zeros<Q>(3), Q(1), zeros<Q>(3), both);
  Mat<Q> expected_a2 = {{frac<Q>(2, 3), frac<Q>(2, 3), Q(0)},
                        {Q(0), frac<Q>(1, 3), frac<Q>(1, 3)},
                        {Q(1), Q(0), frac<Q>(-2, 3)}};
  Mat<Q> expected_b2 = {{frac<Q>(1, 3), Q(0), frac<Q>(-2, 3)},
                        {frac<Q>(1, 3), frac<Q>(2, 3), Q(0)},
                        {Q(0), frac<Q>(2, 3), Q(1)}};
  CHECK(gst.a == expected_a2);
  CHECK(gst.b == expected_b2);
  CHECK_FALSE(quasi_supermodular_matrix_a(gs.a));
  CHECK_FALSE(quasi_supermodular_matrix_a(gst.a));

  auto same = apply_equivalence(g, Q(1), zeros<Q>(3), Q(1), zeros<Q>(3),
                                identity_permutation(3, 3));
  CHECK(same.a == g.a);
  CHECK(same.b == g.b);
  CHECK_THROWS_AS(apply_equivalence(g, Q(0), zeros<Q>(3), Q(1), zeros<Q>(3),
                                    identity_permutation(3, 3)),
                  input_error);
}

TEST_CASE("best responses are invariant under positive scaling plus column offsets") {
  auto g = to_double_game(fixtures::shapley());
  Mat<double> a2 = g.a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a2[i][j] = 2.0 * a2[i][j] + (j == 0 ? 0.7 : j == 1 ? -0.3 : 0.1);
  BimatrixGame<double> g2(a2, g.b, "scaled");
  for (int t = 0; t < 100; ++t) {
    auto rng = trial_stream(11, t);
    auto y = random_simplex_point(rng, 3);
    CHECK(best_response_set(g, Player::A, y, 1e-9) == best_response_set(g2, Player::A, y, 1e-9));
  }
}

TEST_CASE("equilibria relabel along with the actions") {
  for (const char* which : {"canonical", "pair"}) {
    auto g = std::string(which) == "canonical" ? fixtures::canonical_mixed_sink()
                                               : fixtures::saddle_sink_pair();
    for (int t = 0; t < 4; ++t) {
      auto rng = trial_stream(23, t);
      std::vector<int> sigma = {0, 1, 2}, tau = {0, 1, 2};
      for (int i = 2; i > 0; --i) {
        std::swap(sigma[i], sigma[rng.next() % (i + 1)]);
        std::swap(tau[i], tau[rng.next() % (i + 1)]);
      }
      ActionPermutationPair perm{sigma, tau};
      auto gp = apply_equivalence(g, Q(1), zeros<Q>(3), Q(1), zeros<Q>(3), perm);
      auto eqs = enumerate_equilibria(g);
      auto eqp = enumerate_equilibria(gp);
      REQUIRE(eqs.records.size() == eqp.records.size());
      // every permuted original equilibrium must appear among the permuted game's
      for (auto& r : eqs.records) {
        if (r.kind == EqKind::ContinuumSegment) continue;
        Vec<Q> px(3), py(3);
        for (int i = 0; i < 3; ++i) px[i] = r.x[sigma[i]];
        for (int j = 0; j < 3; ++j) py[j] = r.y[tau[j]];
        bool found = false;
        for (auto& rp : eqp.records) found = found || (rp.x == px && rp.y == py);
        CHECK(found);
      }
    }
  }
}

TEST_CASE("game JSON round trip keeps exact entries") {
  auto g = fixtures::comparison_4_1();
  auto j = game_to_json(g);
  auto gv = parse_game_json(j);
  REQUIRE(std::holds_alternative<BimatrixGame<Q>>(gv));
  auto& g2 = std::get<BimatrixGame<Q>>(gv);
  CHECK(g2.a == g.a);
  CHECK(g2.b == g.b);
}
