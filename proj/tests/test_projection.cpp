#include <doctest.h>

#include <set>

#include "fictplay/experiments.hpp"
#include "fictplay/fixtures.hpp"

using namespace fictplay;
using Q = mpq_class;

TEST_CASE("projection construction and basic conventions") {
  auto g = fixtures::comparison_4_1();
  auto [pa, pb] = build_projection(g);
  CHECK_FALSE(pa.parallel_mode);
  CHECK_FALSE(pb.parallel_mode);
  // target-edge endpoints map to 0 and 1
  CHECK(project_point(pa, unit_vertex<Q>(3, pa.edge_v0)) == Q(0));
  CHECK(project_point(pa, unit_vertex<Q>(3, pa.edge_v1)) == Q(1));
  CHECK(project_point(pb, unit_vertex<Q>(3, pb.edge_v0)) == Q(0));
  CHECK(project_point(pb, unit_vertex<Q>(3, pb.edge_v1)) == Q(1));

  CHECK_THROWS_AS(build_projection(fixtures::shapley()), unsupported_configuration);
}

TEST_CASE("indifferent segments collapse to single points") {
  for (auto game : {fixtures::comparison_4_1(), fixtures::canonical_mixed_sink(),
                    fixtures::parallel_lines()}) {
    auto sq = build_projected_square(game);
    for (auto side : {Player::A, Player::B}) {
      auto& pm = side == Player::A ? sq.phi_a : sq.phi_b;
      auto segs = indifferent_lines(game, other(side));
      for (auto& seg : segs) {
        Q img0 = project_point(pm, seg.p0);
        for (int s = 1; s <= 50; ++s) {
          Q t = frac<Q>(s, 51);
          Vec<Q> pt(3);
          for (int c = 0; c < 3; ++c) pt[c] = seg.p0[c] + t * (seg.p1[c] - seg.p0[c]);
          CHECK(project_point(pm, pt) == img0);
        }
      }
    }
  }
}

TEST_CASE("widths and heights of the canonical square") {
  auto sq = build_projected_square(fixtures::canonical_mixed_sink());
  CHECK(sq.p == frac<Q>(1, 5));
  CHECK(sq.q == frac<Q>(1, 4));
  CHECK(sq.r == frac<Q>(11, 20));
  CHECK(sq.R == frac<Q>(7, 20));
  CHECK(sq.Q == frac<Q>(1, 10));
  CHECK(sq.P == frac<Q>(11, 20));
  CHECK(Q(sq.p + sq.q + sq.r) == Q(1));
  CHECK(Q(sq.P + sq.Q + sq.R) == Q(1));
  CHECK_FALSE(sq.boundary_degenerate);
}

TEST_CASE("region membership commutes with the projection") {
  for (auto game : {fixtures::comparison_4_1(), fixtures::canonical_mixed_sink(),
                    fixtures::unique_pure()}) {
    auto sq = to_double_square(build_projected_square(game));
    auto gd = to_double_game(game);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
      auto rng = trial_stream(31, t);
      auto x = random_simplex_point(rng, 3);
      auto y = random_simplex_point(rng, 3);
      auto brb = best_response_set(gd, Player::B, x, 1e-12);
      auto bra = best_response_set(gd, Player::A, y, 1e-12);
      if (brb.size() != 1 || bra.size() != 1) continue;
      double px = project_point(sq.phi_a, x);
      double py = project_point(sq.phi_b, y);
      // boundary band
      if (std::min({std::abs(px - sq.u1), std::abs(px - sq.u2), std::abs(py - sq.v1),
                    std::abs(py - sq.v2)}) < 1e-7)
        continue;
      ++checked;
      int col = px < sq.u1 ? 0 : (px < sq.u2 ? 1 : 2);
      int row = py < sq.v1 ? 0 : (py < sq.v2 ? 1 : 2);
      CHECK(sq.col_action[col] == brb[0]);
      CHECK(sq.row_action[row] == bra[0]);
    }
    CHECK(checked > 800);
  }
}

TEST_CASE("equilibrium images sit where the theory puts them") {
  // mixed equilibria on the vertices of Cell V
  auto g = fixtures::saddle_sink_pair();
  auto sq = build_projected_square(g);
  auto eqs = enumerate_equilibria(g);
  auto located = locate_ne_images(sq, eqs.records);
  for (auto& [rec, img] : located) {
    if (rec.kind != EqKind::Mixed) continue;
    bool on_u = img.first == sq.u1 || img.first == sq.u2;
    bool on_v = img.second == sq.v1 || img.second == sq.v2;
    CHECK(on_u);
    CHECK(on_v);
  }
  // the pure equilibrium lands inside the closure of its own cell
  auto pure = enumerate_equilibria(fixtures::unique_pure());
  auto sq12 = build_projected_square(fixtures::unique_pure());
  auto loc12 = locate_ne_images(sq12, pure.records);
  auto [rec, img] = loc12[0];
  bool found = false;
  for (auto& cell : sq12.cells) {
    if (cell.b_action == rec.support_b[0] && cell.a_action == rec.support_a[0]) {
      CHECK(img.first >= cell.x0);
      CHECK(img.first <= cell.x1);
      CHECK(img.second >= cell.y0);
      CHECK(img.second <= cell.y1);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("narrow cells of the pure-equilibrium square") {
  auto sq = to_double_square(build_projected_square(fixtures::unique_pure()));
  // cells II, IV, V, VI, VIII all have a width or height below 0.1
  for (int label : {1, 3, 4, 5, 7}) {
    auto& c = sq.cells[label];
    double w = c.x1 - c.x0, h = c.y1 - c.y0;
    CHECK(std::min(w, h) < 0.1);
  }
}

TEST_CASE("stability classification by the definition") {
  auto g = fixtures::saddle_sink_pair();
  auto eqs = enumerate_equilibria(g);
  int saddles = 0, sinks = 0;
  for (auto& r : eqs.records) {
    if (r.kind != EqKind::Mixed) continue;
    auto st = classify_stability(g, r);
    // the sink sits on the e2e3 edge, the saddle on the e1e2 edge
    if (r.support_a == std::vector<int>{1, 2}) {
      CHECK(st.cls == Stability::Sink);
      ++sinks;
    } else if (r.support_a == std::vector<int>{0, 1}) {
      CHECK(st.cls == Stability::Saddle);
      ++saddles;
    }
  }
  CHECK(saddles == 1);
  CHECK(sinks == 1);

  auto canon = fixtures::canonical_mixed_sink();
  auto ceqs = enumerate_equilibria(canon);
  CHECK(classify_stability(canon, ceqs.records[0]).cls == Stability::Sink);
}

TEST_CASE("multi-equilibrium games carry a saddle and a sink") {
  // the designed fixture plus the second degenerate family above its shift
  auto gb = fixtures::degenerate_family_b(frac<Q>(-2, 3) + frac<Q>(1, 10));
  auto eqs = enumerate_equilibria(gb);
  REQUIRE(eqs.records.size() == 3);
  int saddles = 0, sinks_or_pure = 0;
  for (auto& r : eqs.records) {
    if (r.kind == EqKind::Pure) {
      ++sinks_or_pure;
      continue;
    }
    auto st = classify_stability(gb, r);
    if (st.cls == Stability::Saddle) ++saddles;
    if (st.cls == Stability::Sink) ++sinks_or_pure;
  }
  CHECK(saddles >= 1);
  CHECK(sinks_or_pure >= 1);
}

TEST_CASE("face projection of the four-action game") {
  auto a = fixtures::four_by_four();
  auto fp = build_face_projection(a);
  auto img = project_to_face(fp, Vec<Q>{Q(0), Q(0), Q(0), Q(1)});
  CHECK(img == Vec<Q>{frac<Q>(-5, 3677), frac<Q>(740, 3677), frac<Q>(2942, 3677)});
  // the first three vertices live on the face already
  for (int v = 0; v < 3; ++v) {
    auto id = project_to_face(fp, unit_vertex<Q>(4, v));
    CHECK(id == Vec<Q>{v == 0 ? Q(1) : Q(0), v == 1 ? Q(1) : Q(0), v == 2 ? Q(1) : Q(0)});
  }
  // all four regions appear on the face and the fourth is bounded
  Mat<double> ad(4, Vec<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ad[i][j] = to_double(a[i][j]);
  FaceProjection<double> fpd;
  for (auto& v : fp.center) fpd.center.push_back(to_double(v));
  std::set<int> seen;
  for (int u = 0; u <= 40; ++u)
    for (int v = 0; u + v <= 40; ++v)
      seen.insert(face_best_response(ad, fpd, {u / 40.0, v / 40.0, 1.0 - u / 40.0 - v / 40.0}));
  CHECK(seen == std::set<int>{0, 1, 2, 3});
}
