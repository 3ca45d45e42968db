#include <doctest.h>

#include "fictplay/experiments.hpp"
#include "fictplay/fixtures.hpp"

using namespace fictplay;
using Q = mpq_class;

TEST_CASE("unique equilibria of the classic fixtures") {
  auto sh = enumerate_equilibria(fixtures::shapley());
  REQUIRE(sh.records.size() == 1);
  CHECK(sh.records[0].kind == EqKind::Mixed);
  for (auto& w : sh.records[0].x) CHECK(w == frac<Q>(1, 3));
  for (auto& w : sh.records[0].y) CHECK(w == frac<Q>(1, 3));
  CHECK(sh.records[0].support_a == std::vector<int>{0, 1, 2});

  auto eq12 = enumerate_equilibria(fixtures::unique_pure());
  REQUIRE(eq12.records.size() == 1);
  CHECK(eq12.records[0].kind == EqKind::Pure);
  CHECK(eq12.records[0].support_a == std::vector<int>{2});
  CHECK(eq12.records[0].support_b == std::vector<int>{0});

  auto ost = enumerate_equilibria(fixtures::ostrovski());
  REQUIRE(ost.records.size() == 1);
  auto xd = records_to_double(ost.records)[0];
  CHECK(std::abs(xd.x[0] - 0.288) < 1e-3);
  CHECK(std::abs(xd.x[1] - 0.370) < 1e-3);
  CHECK(std::abs(xd.x[2] - 0.342) < 1e-3);
  CHECK(std::abs(xd.y[0] - 0.335) < 1e-3);
  CHECK(std::abs(xd.y[1] - 0.327) < 1e-3);
  CHECK(std::abs(xd.y[2] - 0.338) < 1e-3);
}

TEST_CASE("continuum of equilibria at the critical parameter") {
  auto eqs = enumerate_equilibria(fixtures::degenerate_family_a(frac<Q>(-2, 3)));
  REQUIRE(eqs.records.size() == 1);
  auto& seg = eqs.records[0];
  REQUIRE(seg.kind == EqKind::ContinuumSegment);
  // the segment runs along the e1-e2 edge between the two interior tie points
  Vec<Q> lo = {frac<Q>(3, 4), frac<Q>(1, 4), Q(0)};
  Vec<Q> hi = {frac<Q>(1, 4), frac<Q>(3, 4), Q(0)};
  bool fwd = seg.x_end1 == lo && seg.x_end2 == hi;
  bool rev = seg.x_end1 == hi && seg.x_end2 == lo;
  CHECK((fwd || rev));
  CHECK(seg.y_end1 == unit_vertex<Q>(3, 0));
  CHECK(seg.y_end2 == unit_vertex<Q>(3, 0));
  CHECK(verify_equilibrium(fixtures::degenerate_family_a(frac<Q>(-2, 3)), seg.x_end1,
                           seg.y_end1, Q(0)));
  CHECK(verify_equilibrium(fixtures::degenerate_family_a(frac<Q>(-2, 3)), seg.x_end2,
                           seg.y_end2, Q(0)));
}

TEST_CASE("segment plus isolated equilibrium in the second family") {
  auto eqs = enumerate_equilibria(fixtures::degenerate_family_b(frac<Q>(-2, 3)));
  REQUIRE(eqs.records.size() == 2);
  int segs = 0, mixed = 0;
  for (auto& r : eqs.records) {
    if (r.kind == EqKind::ContinuumSegment) {
      ++segs;
      // one endpoint is the pure (e1, e1) profile
      bool at_vertex = r.x_end1 == unit_vertex<Q>(3, 0) || r.x_end2 == unit_vertex<Q>(3, 0);
      CHECK(at_vertex);
      CHECK(r.y_end1 == unit_vertex<Q>(3, 0));
    }
    if (r.kind == EqKind::Mixed) ++mixed;
  }
  CHECK(segs == 1);
  CHECK(mixed == 1);

  CHECK(enumerate_equilibria(fixtures::degenerate_family_b(frac<Q>(-2, 3) - frac<Q>(1, 10)))
            .records.size() == 1);
  CHECK(enumerate_equilibria(fixtures::degenerate_family_b(frac<Q>(-2, 3) + frac<Q>(1, 10)))
            .records.size() == 3);
}

TEST_CASE("isolated equilibrium counts are odd on random nondegenerate games") {
  int tested = 0;
  for (uint64_t t = 0; tested < 200; ++t) {
    REQUIRE(t < 4000);
    auto rng = trial_stream(5, t);
    Mat<double> a(3, Vec<double>(3)), b(3, Vec<double>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a[i][j] = rng.uniform();
        b[i][j] = rng.uniform();
      }
    BimatrixGame<double> g(a, b, "rand");
    if (!check_nondegenerate(g, 1e-9).nondegenerate) continue;
    auto eqs = enumerate_equilibria(g);
    if (eqs.degenerate_unsupported) continue;
    bool any_segment = false;
    for (auto& r : eqs.records) any_segment = any_segment || r.kind == EqKind::ContinuumSegment;
    if (any_segment) continue;
    ++tested;
    CHECK(eqs.records.size() % 2 == 1);
    // equalization soundness and support consistency
    for (auto& r : eqs.records) {
      CHECK(verify_equilibrium(g, r.x, r.y, 1e-9));
      CHECK(r.support_a == support(r.x, 1e-9));
      CHECK(r.support_b == support(r.y, 1e-9));
    }
  }
  CHECK(tested == 200);
}

TEST_CASE("three equilibria with their stability pattern") {
  auto g = fixtures::saddle_sink_pair();
  auto eqs = enumerate_equilibria(g);
  REQUIRE(eqs.records.size() == 3);
  for (auto& r : eqs.records) CHECK(verify_equilibrium(g, r.x, r.y, Q(0)));
}
