#include <doctest.h>

#include <set>

#include "fictplay/experiments.hpp"
#include "fictplay/fixtures.hpp"

using namespace fictplay;
using Q = mpq_class;

namespace {

ReturnMapAnalysis canonical_analysis() {
  auto g = fixtures::canonical_mixed_sink();
  auto sq = to_double_square(build_projected_square(g));
  auto recs = records_to_double(enumerate_equilibria(g).records);
  auto img = std::make_pair(project_point(sq.phi_a, recs[0].x),
                            project_point(sq.phi_b, recs[0].y));
  return build_return_map(sq, img, ReturnConfig::MixedSink);
}

ReturnMapAnalysis pure_analysis() {
  auto g = fixtures::unique_pure();
  auto sq = to_double_square(build_projected_square(g));
  auto recs = records_to_double(enumerate_equilibria(g).records);
  auto img = std::make_pair(project_point(sq.phi_a, recs[0].x),
                            project_point(sq.phi_b, recs[0].y));
  return build_return_map(sq, img, ReturnConfig::PureNe);
}

}  // namespace

TEST_CASE("coefficient composition equals pointwise composition") {
  for (int t = 0; t < 100; ++t) {
    auto rng = trial_stream(61, t);
    MoebiusMap f{1 + rng.uniform(), rng.uniform(), rng.uniform(), 1 + rng.uniform()};
    MoebiusMap g{1 + rng.uniform(), rng.uniform(), rng.uniform(), 1 + rng.uniform()};
    MoebiusMap h = compose(g, f);
    double d = rng.uniform();
    CHECK(std::abs(h(d) - g(f(d))) < 1e-12);
  }
}

TEST_CASE("stage maps of the canonical mixed configuration") {
  auto an = canonical_analysis();
  CHECK(an.p == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(an.q == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(an.r == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(an.P == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(an.Q == doctest::Approx(0.10).epsilon(1e-12));
  CHECK(an.R == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(an.M == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(an.m == doctest::Approx(0.08).epsilon(1e-12));

  // the first stage is the degenerate (affine) map with the known closed form
  double d0 = 0.31;
  double expected = an.r / (an.q + an.r) * d0 - an.q / (an.q + an.r) * (an.Q + an.R);
  CHECK(an.stages[0](d0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(an.stages[0].c == 0.0);

  // thresholds: d_C solves stage-0 output = 0 here, d_c the side split
  CHECK(an.d_C == doctest::Approx(an.q * (an.Q + an.R) / an.r).epsilon(1e-12));
  double den = an.R * (an.q + an.r) - an.p * an.Q;
  CHECK(an.d_c == doctest::Approx(an.p * an.Q * (an.Q + an.R) / den).epsilon(1e-12));
  CHECK(an.d_c > 0);
  CHECK(an.d_c < an.d_C);
  CHECK(an.d_C < an.section_length);
}

TEST_CASE("analytic return map equals the simulated first return") {
  auto an = canonical_analysis();
  for (int i = 1; i <= 20; ++i) {
    double d0 = an.d_C + (an.section_length - an.d_C) * i / 20.0;
    auto sim = simulate_first_return(an.square, d0);
    REQUIRE(sim.has_value());
    CHECK(std::abs(an.composed8(d0) - *sim) < 1e-9);
  }
  // branch maps below the eight-cell regime
  for (int i = 1; i <= 20; ++i) {
    double d0 = 1e-4 + (an.d_C - 2e-4) * i / 20.0;
    auto sim = simulate_first_return(an.square, d0);
    REQUIRE(sim.has_value());
    CHECK(std::abs(return_map_value(an, d0) - *sim) < 1e-9);
  }
  // collapsed stages at the threshold: the eight-cell composition continues
  // the six-cell branch
  double fC8 = an.composed8(an.d_C);
  double fC6 = an.composed6_top(an.d_C);
  CHECK(std::abs(fC8 - fC6) < 1e-12);
  double d1 = an.stages[0](an.d_C);
  double d2 = an.stages[1](d1);
  double d3 = an.stages[2](d2);
  CHECK(std::abs(d1) < 1e-12);
  CHECK(std::abs(d2) < 1e-12);
  CHECK(std::abs(d3) < 1e-12);
}

TEST_CASE("path kinds agree with the simulated cell count") {
  auto an = canonical_analysis();
  for (int i = 0; i < 50; ++i) {
    double d0 = 1e-3 + (an.section_length - 2e-3) * i / 49.0;
    PathKind kind = classify_path_kind(an, d0);
    // simulate one loop and count the distinct cells visited
    IntegrateOptions opt;
    opt.max_events = 200;
    auto tr = pbrd_integrate(an.square, an.square.u1, an.square.v2 + d0, opt);
    std::set<std::pair<int, int>> cells;
    auto& sq = an.square;
    for (auto& ev : tr.events) {
      double x = ev.x[0], y = ev.y[0];
      // look up the cell by the active pair
      cells.insert({ev.ai, ev.bj});
      (void)x;
      (void)y;
      if (std::abs(ev.x[0] - sq.u1) < 1e-12 && ev.y[0] > sq.v2 + 1e-12 &&
          &ev != &tr.events.front())
        break;
    }
    int expected = kind == PathKind::FourCell ? 4 : kind == PathKind::SixCell ? 6 : 8;
    // the loop visits exactly `expected` distinct best-response pairs
    CHECK((int)cells.size() == expected);
  }
}

TEST_CASE("contraction certificate for the mixed loop") {
  auto an = canonical_analysis();
  auto cert = verify_contraction(an);
  CHECK(cert.ok);
  CHECK(cert.sup_fprime > 0);
  CHECK(cert.sup_fprime < 1);
  CHECK(cert.sup_fprime <= cert.analytic_bound + 1e-12);
  CHECK(cert.analytic_bound < 1);
  CHECK(cert.min_gap > 0);
  CHECK(cert.iterations_to_exit >= 1);

  // the gap d - f(d) grows with d on the eight-cell regime
  double prev = -1;
  for (int i = 1; i <= 64; ++i) {
    double d = an.d_C + (an.section_length - an.d_C) * i / 64.0;
    double gap = d - an.composed8(d);
    CHECK(gap > prev);
    prev = gap;
  }

  // iterating the return map drops below the eight-cell regime in finitely
  // many steps, strictly decreasing along the way
  double d = an.section_length;
  int guard = 0;
  while (d > an.d_C) {
    double next = an.composed8(d);
    CHECK(next < d);
    d = next;
    REQUIRE(++guard < 1000);
  }
}

TEST_CASE("pure-configuration surround map") {
  auto an = pure_analysis();
  CHECK(an.config == ReturnConfig::PureNe);
  // oracle equivalence on the surround regime
  for (int i = 1; i <= 20; ++i) {
    double d0 = an.d_C + (an.section_length - an.d_C) * i / 20.0;
    auto sim = simulate_first_return(an.square, d0);
    REQUIRE(sim.has_value());
    CHECK(std::abs(an.composed8(d0) - *sim) < 1e-9);
  }
  // the composed map is dominated by the product of its four shrinking stages
  MoebiusMap even = compose(an.stages[6], compose(an.stages[4],
                                                  compose(an.stages[2], an.stages[0])));
  double denom = (an.p + an.q) * (an.P + an.Q) * (an.q + an.r) * (an.Q + an.R);
  for (int i = 1; i <= 16; ++i) {
    double d0 = an.d_C + (an.section_length - an.d_C) * i / 16.0;
    double f = an.composed8(d0);
    double dom = even(d0);
    CHECK(f <= dom + 1e-12);
    CHECK(dom < d0);
    // the leading coefficient of the dominating map matches the cell products
    CHECK(dom <= an.p * an.P * an.r * an.R * d0 / denom + 1e-12);
  }
  // iterating from the top exits the surround regime: some shrinking stage
  // goes negative and the trajectory enters the center cell
  double d = an.section_length;
  int n = 0;
  while (d > an.d_C && n < 100000) {
    d = an.composed8(d);
    ++n;
  }
  CHECK(d <= an.d_C);
  CHECK(n >= 1);
  // below the threshold the simulated trajectory is absorbed by the center
  IntegrateOptions opt;
  opt.max_events = 400;
  auto tr = pbrd_integrate(an.square, an.square.u1, an.square.v2 + std::max(d, 1e-6), opt);
  CHECK(tr.absorbed);
}

TEST_CASE("distance to the center cell") {
  auto an = canonical_analysis();
  auto& sq = an.square;
  CHECK(distance_to_cell_v(sq, (sq.u1 + sq.u2) / 2, (sq.v1 + sq.v2) / 2) == 0.0);
  CHECK(distance_to_cell_v(sq, sq.u1, sq.v2 + 0.25) == doctest::Approx(0.25));
  double dx = 0.1;
  CHECK(distance_to_cell_v(sq, sq.u2 + dx, sq.v1 - dx) ==
        doctest::Approx(std::sqrt(2.0) * dx));
}

TEST_CASE("normalization rejects foreign configurations") {
  auto g = fixtures::canonical_mixed_sink();
  auto sq = to_double_square(build_projected_square(g));
  auto recs = records_to_double(enumerate_equilibria(g).records);
  auto img = std::make_pair(project_point(sq.phi_a, recs[0].x),
                            project_point(sq.phi_b, recs[0].y));
  CHECK_THROWS_AS(build_return_map(sq, img, ReturnConfig::PureNe), unsupported_configuration);
}
