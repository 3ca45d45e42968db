#include <doctest.h>

#include "fictplay/experiments.hpp"
#include "fictplay/fixtures.hpp"

using namespace fictplay;
using Q = mpq_class;

TEST_CASE("indifferent points are exact") {
  auto g = fixtures::comparison_4_1();
  auto xbar = indifferent_point(g, Player::B);
  auto ybar = indifferent_point(g, Player::A);
  REQUIRE(xbar.status == IndiffStatus::Unique);
  REQUIRE(ybar.status == IndiffStatus::Unique);
  CHECK(xbar.point == Vec<Q>{frac<Q>(-1, 2), frac<Q>(5, 6), frac<Q>(2, 3)});
  CHECK(ybar.point == Vec<Q>{frac<Q>(5, 6), frac<Q>(-1, 2), frac<Q>(2, 3)});
  CHECK_FALSE(xbar.is_internal);
  CHECK_FALSE(ybar.is_internal);
  // defining property: A ybar has all coordinates equal
  auto ay = mat_vec(g.a, ybar.point);
  CHECK(ay[0] == ay[1]);
  CHECK(ay[1] == ay[2]);
  CHECK(ay[0] == ybar.level);

  auto sh = indifferent_point(fixtures::shapley(), Player::A);
  CHECK(sh.point == Vec<Q>{frac<Q>(1, 3), frac<Q>(1, 3), frac<Q>(1, 3)});
  CHECK(sh.is_internal);

  auto g4 = fixtures::four_by_four_game();
  auto x4 = indifferent_point(g4, Player::A);
  CHECK(x4.point == Vec<Q>{frac<Q>(-5, 2988), frac<Q>(185, 747), frac<Q>(1471, 1494),
                           frac<Q>(-689, 2988)});
  CHECK_FALSE(x4.is_internal);
}

TEST_CASE("class assignment of the fixtures") {
  CHECK(classify_iip(fixtures::shapley()).cls == IipClass::WithIip);
  CHECK(classify_iip(fixtures::ostrovski()).cls == IipClass::WithIip);
  CHECK(classify_iip(fixtures::comparison_4_1()).cls == IipClass::WithoutIip);
  CHECK(classify_iip(fixtures::unique_pure()).cls == IipClass::WithoutIip);
  CHECK(classify_iip(fixtures::canonical_mixed_sink()).cls == IipClass::WithoutIip);
  CHECK(classify_iip(fixtures::parallel_lines()).cls == IipClass::WithoutIip);
}

TEST_CASE("a strictly dominant action flags the game reducible") {
  Mat<Q> a = {{Q(5), Q(5), Q(5)}, {Q(0), Q(1), Q(0)}, {Q(1), Q(0), Q(0)}};
  Mat<Q> b = {{Q(0), Q(1), Q(2)}, {Q(1), Q(0), Q(2)}, {Q(0), Q(2), Q(1)}};
  BimatrixGame<Q> g(a, b, "dominant");
  auto polys = best_response_polygons(g, Player::A);
  CHECK(polys[0].area == Q(1));
  CHECK(polys[1].vertices.empty());
  CHECK(polys[2].vertices.empty());
  CHECK(classify_iip(g).cls == IipClass::Reducible);
}

TEST_CASE("indifferent segments of the fixtures") {
  // symmetric game: three segments meeting at the barycenter
  auto sh = indifferent_lines(fixtures::shapley(), Player::A);
  CHECK(sh.size() == 3);
  for (auto& seg : sh) {
    bool touches_bary = false;
    for (const Vec<Q>* p : {&seg.p0, &seg.p1}) {
      bool eq = true;
      for (auto& w : *p) eq = eq && w == frac<Q>(1, 3);
      touches_bary = touches_bary || eq;
    }
    CHECK(touches_bary);
  }

  auto cmp = indifferent_lines(fixtures::comparison_4_1(), Player::A);
  CHECK(cmp.size() == 2);

  // interior points of a clipped segment have the tied pair strictly best
  auto g = fixtures::comparison_4_1();
  for (auto& seg : cmp) {
    for (int s = 1; s <= 5; ++s) {
      Q t = frac<Q>(s, 6);
      Vec<Q> pt(3);
      for (int c = 0; c < 3; ++c) pt[c] = seg.p0[c] + t * (seg.p1[c] - seg.p0[c]);
      auto u = action_payoffs(g, Player::A, pt);
      CHECK(u[seg.j] == u[seg.k]);
      for (int i = 0; i < 3; ++i)
        if (i != seg.j && i != seg.k) CHECK(u[seg.j] > u[i]);
    }
  }
}

TEST_CASE("parallel indifference lines") {
  auto g = fixtures::parallel_lines();
  auto ip = indifferent_point(g, Player::A);
  CHECK(ip.status == IndiffStatus::ParallelLines);
  auto segs = indifferent_lines(g, Player::A);
  REQUIRE(segs.size() == 2);
  // equal slopes: the in-plane directions are proportional
  Vec<Q> d0(3), d1(3);
  for (int c = 0; c < 3; ++c) {
    d0[c] = segs[0].p1[c] - segs[0].p0[c];
    d1[c] = segs[1].p1[c] - segs[1].p0[c];
  }
  CHECK(d0[0] * d1[1] - d0[1] * d1[0] == Q(0));
}

TEST_CASE("region polygons of the symmetric game") {
  auto polys = best_response_polygons(fixtures::shapley(), Player::A);
  REQUIRE(polys.size() == 3);
  for (auto& reg : polys) {
    CHECK(reg.area == frac<Q>(1, 3));  // congruent quadrilaterals
    CHECK(reg.vertices.size() == 4);
    bool has_vertex = false;
    for (auto& v : reg.vertices) has_vertex = has_vertex || v == unit_vertex<Q>(3, reg.action);
    CHECK(has_vertex);
  }
}

TEST_CASE("narrow regions of the pure-equilibrium game") {
  auto g = fixtures::unique_pure();
  auto zb = best_response_polygons(g, Player::B);  // regions of B inside Delta_A
  auto za = best_response_polygons(g, Player::A);
  CHECK(zb[0].area > Q(0));
  CHECK(zb[0].area < frac<Q>(1, 10));  // Z^B_1 is narrow
  CHECK(za[2].area > Q(0));
  CHECK(za[2].area < frac<Q>(1, 10));  // Z^A_3 is narrow
}

TEST_CASE("region partition against a grid oracle on random games") {
  int games = 0;
  for (uint64_t t = 0; games < 100; ++t) {
    REQUIRE(t < 400);
    auto rng = trial_stream(17, t);
    Mat<double> a(3, Vec<double>(3)), b(3, Vec<double>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a[i][j] = rng.uniform();
        b[i][j] = rng.uniform();
      }
    BimatrixGame<double> g(a, b, "rand");
    if (!check_nondegenerate(g, 1e-9).nondegenerate) continue;
    ++games;
    auto polys = best_response_polygons(g, Player::A);
    double total = 0;
    for (auto& reg : polys) total += reg.area;
    CHECK(std::abs(total - 1.0) < 1e-9);
    // grid classification agrees with polygon membership away from boundaries
    Mat<double> util = {{a[0][0], a[0][1], a[0][2]},
                        {a[1][0], a[1][1], a[1][2]},
                        {a[2][0], a[2][1], a[2][2]}};
    int n = 31;
    for (int u = 0; u <= n; ++u) {
      for (int v = 0; u + v <= n; ++v) {
        std::vector<double> y = {(double)u / n, (double)v / n, (double)(n - u - v) / n};
        auto scores = mat_vec(util, y);
        int br = 0;
        double second = -1e300;
        for (int i = 1; i < 3; ++i)
          if (scores[i] > scores[br]) br = i;
        for (int i = 0; i < 3; ++i)
          if (i != br) second = std::max(second, scores[i]);
        if (scores[br] - second < 1e-7) continue;  // boundary band
        // membership: the point must be inside br's polygon (within tolerance)
        auto& poly = polys[br];
        REQUIRE(poly.vertices.size() >= 3);
        bool inside = true;
        int m = (int)poly.vertices.size();
        for (int e = 0; e < m; ++e) {
          auto& p = poly.vertices[e];
          auto& q = poly.vertices[(e + 1) % m];
          double cross = (q[1] - p[1]) * (y[2] - p[2]) - (q[2] - p[2]) * (y[1] - p[1]);
          if (cross < -1e-9) inside = false;
        }
        CHECK(inside);
      }
    }
  }
}

TEST_CASE("without-IIP games have at most two segments arranged as a known pattern") {
  int games = 0;
  for (uint64_t t = 0; games < 60; ++t) {
    REQUIRE(t < 600);
    auto rng = trial_stream(29, t);
    auto maybe = sample_without_iip_game(rng);
    if (!maybe) continue;
    ++games;
    for (Player p : {Player::A, Player::B}) {
      auto segs = indifferent_lines(*maybe, p);
      CHECK(segs.size() <= 2);
    }
    auto pat = indifference_pattern(*maybe, Player::A);
    CHECK(pat != IndiffPattern::Other);
  }
}
