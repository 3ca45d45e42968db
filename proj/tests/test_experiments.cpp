#include <doctest.h>

#include "fictplay/experiments.hpp"
#include "fictplay/fixtures.hpp"

using namespace fictplay;
using Q = mpq_class;

TEST_CASE("sampling study is reproducible and matches a hand check") {
  auto a = run_sampling_study(3, 2000, 99);
  auto b = run_sampling_study(3, 2000, 99);
  CHECK(a.count_without_iip == b.count_without_iip);
  CHECK(a.proportion == b.proportion);
  CHECK(a.proportion > 0.7);

  // single-trial agreement with the geometry module
  auto rng = trial_stream(99, 123);
  Mat<double> m(3, Vec<double>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = rng.uniform();
  BimatrixGame<double> g(m, m, "sample");
  auto ip = indifferent_point(g, Player::A);
  auto one = run_sampling_study(3, 124, 99);  // trials 0..123 inclusive
  auto upto = run_sampling_study(3, 123, 99);
  long delta = one.count_without_iip - upto.count_without_iip;
  CHECK(delta == ((ip.status == IndiffStatus::Unique && !ip.is_internal) ? 1 : 0));
}

TEST_CASE("sweeps locate the regime shift at the critical parameter") {
  // structure only: the dynamics runs are exercised by the acceptance suite
  auto rep = run_parameter_sweep(SweepFamily::ExampleA, default_sweep_grid(), false);
  Q target = frac<Q>(-2, 3);
  // the shift is bracketed within 1e-4
  bool found = false;
  for (auto& s : rep.shift_points) {
    Q err = s - target;
    if (abs_val(err) <= frac<Q>(1, 10000)) found = true;
  }
  CHECK(found);
  // grid rows are all analyzable and without an internal indifferent point
  for (auto& row : rep.rows) {
    CHECK(row.iip == IipClass::WithoutIip);
    CHECK(row.isolated_count + row.segment_count >= 1);
  }
  // away from the critical value the equilibrium count is locally constant
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    Q mid = (rep.rows[i].k + rep.rows[i + 1].k) / 2;
    Q dist = mid - target;
    if (abs_val(dist) < frac<Q>(1, 24)) continue;
    CHECK(rep.rows[i].isolated_count == rep.rows[i + 1].isolated_count);
  }

  auto repb = run_parameter_sweep(SweepFamily::ExampleB, default_sweep_grid(), false);
  found = false;
  for (auto& s : repb.shift_points) {
    Q err = s - target;
    if (abs_val(err) <= frac<Q>(1, 10000)) found = true;
  }
  CHECK(found);
  // counts cross 1 -> (segment + isolated) -> 3 at the shift
  for (auto& row : repb.rows) {
    CHECK(row.iip == IipClass::WithoutIip);
    if (row.k < target) CHECK(row.isolated_count == 1);
    if (row.k == target) {
      CHECK(row.segment_count == 1);
      CHECK(row.isolated_count == 1);
    }
    if (row.k > target) CHECK(row.isolated_count == 3);
  }
}

TEST_CASE("mass verification accepts a small batch") {
  auto rep = verify_main_theorem(60, 2024, 2);
  CHECK(rep.games_tested == 60);
  CHECK(rep.runs == 120);
  CHECK(rep.failures == 0);
}

TEST_CASE("the designed unique-sink fixture validates end to end") {
  auto entry = build_canonical_theorem2_fixture();
  auto sq = build_projected_square(entry.game);
  auto frozen = build_projected_square(fixtures::canonical_mixed_sink());
  CHECK(sq.u1 == frozen.u1);
  CHECK(sq.u2 == frozen.u2);
  CHECK(sq.v1 == frozen.v1);
  CHECK(sq.v2 == frozen.v2);
  CHECK(sq.ea_img == frozen.ea_img);
  CHECK(sq.eb_img == frozen.eb_img);

  // sink oracle: projected play from all four cells around the equilibrium
  // image lands on it
  auto sqd = to_double_square(sq);
  auto recs = records_to_double(enumerate_equilibria(entry.game).records);
  REQUIRE(recs.size() == 1);
  double nx = project_point(sqd.phi_a, recs[0].x);
  double ny = project_point(sqd.phi_b, recs[0].y);
  double eps = 0.02;
  for (auto [dx, dy] : std::vector<std::pair<double, double>>{
           {-eps, -eps}, {-eps, eps}, {eps, -eps}, {eps, eps}}) {
    auto tr = pbrd_integrate(sqd, nx + dx, ny + dy);
    double err = std::hypot(tr.terminal_x[0] - nx, tr.terminal_y[0] - ny);
    CHECK(err < 1e-5);
  }
}

TEST_CASE("every built-in fixture satisfies its expectations") {
  std::vector<std::string> names;
  for (auto& entry : fixture_registry()) {
    names.push_back(entry.name);
    auto fails = run_fixture_checks(entry);
    for (auto& f : fails) MESSAGE(entry.name, ": ", f);
    CHECK(fails.empty());
  }
  // the registry carries every displayed payoff matrix
  for (const char* wanted : {"shapley", "ostrovski", "unique_pure", "comparison_4_1",
                             "degenerate_a_critical", "degenerate_b_critical", "four_by_four"})
    CHECK(std::count(names.begin(), names.end(), wanted) == 1);
}
