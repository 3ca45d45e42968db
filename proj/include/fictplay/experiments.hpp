#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>

#include "fictplay/design.hpp"
#include "fictplay/dynamics.hpp"
#include "fictplay/fixtures.hpp"
#include "fictplay/poincare.hpp"

namespace fictplay {

// splitmix64: the published finalizer constants; one statelessly split stream
// per trial index keeps aggregated results order independent.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial) {
  SplitMix64 seeder(seed);
  uint64_t base = seeder.next();
  SplitMix64 s(base ^ (trial * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull));
  s.next();
  return s;
}

inline std::vector<double> random_simplex_point(SplitMix64& rng, int n) {
  // exponential spacings normalized to the simplex
  std::vector<double> v(n);
  double s = 0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    v[i] = -std::log(1 - u);
    s += v[i];
  }
  for (int i = 0; i < n; ++i) v[i] /= s;
  return v;
}

// ---- Appendix-style sampling study -------------------------------------------

struct SamplingReport {
  int dimension = 0;
  long trials = 0;
  uint64_t seed = 0;
  long count_without_iip = 0;
  long count_singular = 0;
  double proportion = 0;
  double wall_time_seconds = 0;
};

// Sample A uniform on [0,1)^{n x n}, solve the indifference system for the
// row player and count how often the solution leaves the simplex.
inline SamplingReport run_sampling_study(int dimension, long trials, uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  SamplingReport rep;
  rep.dimension = dimension;
  rep.trials = trials;
  rep.seed = seed;
  for (long t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_stream(seed, (uint64_t)t);
    Mat<double> a(dimension, Vec<double>(dimension));
    for (int i = 0; i < dimension; ++i)
      for (int j = 0; j < dimension; ++j) a[i][j] = rng.uniform();
    BimatrixGame<double> g(a, a, "sample");
    auto ip = indifferent_point(g, Player::A);
    if (ip.status != IndiffStatus::Unique) {
      rep.count_singular++;
      continue;
    }
    if (!ip.is_internal) rep.count_without_iip++;
  }
  rep.proportion = trials > 0 ? (double)rep.count_without_iip / (double)trials : 0;
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---- parameter sweeps over the degenerate families ----------------------------

enum class SweepFamily { ExampleA, ExampleB };

inline BimatrixGame<mpq_class> sweep_game(SweepFamily f, const mpq_class& k) {
  return f == SweepFamily::ExampleA ? fixtures::degenerate_family_a(k)
                                    : fixtures::degenerate_family_b(k);
}

struct SweepRow {
  mpq_class k;
  IipClass iip = IipClass::WithoutIip;
  bool nondegenerate = true;
  int isolated_count = 0;
  int segment_count = 0;
  std::string signature;  // NE structure: kinds plus ordered supports
  std::vector<LimitTag> limits;
};

struct SweepReport {
  SweepFamily family;
  std::vector<SweepRow> rows;
  std::vector<mpq_class> shift_points;  // bracketed to width <= 1e-4
};

inline std::string ne_signature(const EquilibriumSet<mpq_class>& eqs, bool nondeg) {
  std::string sig = nondeg ? "n:" : "d:";
  std::vector<std::string> parts;
  for (auto& r : eqs.records) {
    std::string p = r.kind == EqKind::Pure ? "P" : (r.kind == EqKind::Mixed ? "M" : "C");
    p += "[";
    for (int i : r.support_a) p += std::to_string(i);
    p += "|";
    for (int j : r.support_b) p += std::to_string(j);
    p += "]";
    parts.push_back(p);
  }
  std::sort(parts.begin(), parts.end());
  for (auto& p : parts) sig += p;
  return sig;
}

inline std::vector<std::vector<double>> sweep_start_set() {
  return {{0.60, 0.25, 0.15, 0.20, 0.45, 0.35},
          {0.15, 0.70, 0.15, 0.50, 0.30, 0.20},
          {0.30, 0.30, 0.40, 0.25, 0.25, 0.50},
          {0.50, 0.10, 0.40, 0.70, 0.20, 0.10},
          {0.22, 0.48, 0.30, 0.34, 0.33, 0.33}};
}

inline SweepRow sweep_row(SweepFamily f, const mpq_class& k, bool run_dynamics) {
  SweepRow row;
  row.k = k;
  auto g = sweep_game(f, k);
  row.iip = classify_iip(g).cls;
  row.nondegenerate = check_nondegenerate(g, mpq_class(0)).nondegenerate;
  auto eqs = enumerate_equilibria(g);
  for (auto& r : eqs.records)
    (r.kind == EqKind::ContinuumSegment ? row.segment_count : row.isolated_count)++;
  row.signature = ne_signature(eqs, row.nondegenerate);
  if (run_dynamics) {
    auto gd = to_double_game(g);
    auto recs = records_to_double(eqs.records);
    for (auto& s : sweep_start_set()) {
      std::vector<double> x(s.begin(), s.begin() + 3), y(s.begin() + 3, s.end());
      auto traj = cfp_integrate(gd, x, y);
      row.limits.push_back(classify_limit(traj, recs).tag);
    }
  }
  return row;
}

inline SweepReport run_parameter_sweep(SweepFamily f, const std::vector<mpq_class>& grid,
                                       bool run_dynamics = true) {
  SweepReport rep;
  rep.family = f;
  for (auto& k : grid) rep.rows.push_back(sweep_row(f, k, run_dynamics));
  // bisection refinement of every signature change
  mpq_class width_limit = frac<mpq_class>(1, 10000);
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    if (rep.rows[i].signature == rep.rows[i + 1].signature) continue;
    mpq_class lo = rep.rows[i].k, hi = rep.rows[i + 1].k;
    std::string sig_lo = rep.rows[i].signature;
    while (hi - lo > width_limit) {
      mpq_class mid = (lo + hi) / 2;
      auto r = sweep_row(f, mid, false);
      if (r.signature == sig_lo) lo = mid;
      else hi = mid;
    }
    rep.shift_points.push_back((lo + hi) / 2);
  }
  return rep;
}

inline std::vector<mpq_class> default_sweep_grid() {
  // 97 points on [-3/2, 1/2]
  std::vector<mpq_class> grid;
  for (int i = 0; i <= 96; ++i) {
    mpq_class k = frac<mpq_class>(-3, 2) + frac<mpq_class>(i, 48);
    grid.push_back(k);
  }
  return grid;
}

// ---- mass verification of the convergence theorem -----------------------------

struct TheoremReport {
  long games_tested = 0;
  long rejected = 0;  // samples outside the without-IIP nondegenerate class
  long runs = 0;
  long failures = 0;
  std::string first_failure;  // serialized game for the counterexample artifact
  std::vector<double> first_failure_start;
};

inline std::optional<BimatrixGame<double>> sample_without_iip_game(SplitMix64& rng) {
  Mat<double> a(3, Vec<double>(3)), b(3, Vec<double>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a[i][j] = rng.uniform();
      b[i][j] = rng.uniform();
    }
  BimatrixGame<double> g(a, b, "random");
  if (!check_nondegenerate(g, 1e-9).nondegenerate) return std::nullopt;
  try {
    if (classify_iip(g).cls != IipClass::WithoutIip) return std::nullopt;
  } catch (const unsupported_configuration&) {
    return std::nullopt;
  }
  return g;
}

inline TheoremReport verify_main_theorem(long trials, uint64_t seed, int starts_per_game,
                                         std::function<void(const BimatrixGame<double>&,
                                                            const std::vector<double>&,
                                                            const TrajectoryRecord&)>
                                             on_failure = nullptr) {
  TheoremReport rep;
  uint64_t trial = 0;
  while (rep.games_tested < trials) {
    SplitMix64 rng = trial_stream(seed, trial++);
    auto maybe = sample_without_iip_game(rng);
    if (!maybe) {
      rep.rejected++;
      continue;
    }
    auto& g = *maybe;
    rep.games_tested++;
    auto eqs = enumerate_equilibria(g);
    auto recs = eqs.records;
    for (int s = 0; s < starts_per_game; ++s) {
      auto x = random_simplex_point(rng, 3);
      auto y = random_simplex_point(rng, 3);
      auto traj = cfp_integrate(g, x, y);
      auto cls = classify_limit(traj, recs);
      rep.runs++;
      if (cls.tag != LimitTag::ConvergedToNe) {
        rep.failures++;
        if (rep.first_failure.empty()) {
          std::ostringstream os;
          os.precision(17);
          for (auto& row : g.a)
            for (double v : row) os << v << " ";
          os << "| ";
          for (auto& row : g.b)
            for (double v : row) os << v << " ";
          rep.first_failure = os.str();
          rep.first_failure_start = x;
          rep.first_failure_start.insert(rep.first_failure_start.end(), y.begin(), y.end());
        }
        if (on_failure) on_failure(g, x, traj);
      }
    }
  }
  return rep;
}

// ---- canonical unique-mixed fixture, constructed from its target geometry -----

struct FixtureEntry {
  std::string name;
  BimatrixGame<mpq_class> game;
  std::string note;
};

inline FixtureEntry build_canonical_theorem2_fixture() {
  using Q = mpq_class;
  SectorSpec<Q> side_a;  // Delta_A: columns of the projected square
  side_a.center = {frac<Q>(-11, 25), frac<Q>(-3, 50), frac<Q>(3, 2)};
  side_a.edge_v0 = 0;
  side_a.edge_v1 = 1;
  side_a.t_low = frac<Q>(1, 5);    // p = .2
  side_a.t_high = frac<Q>(9, 20);  // p+q = .45
  side_a.act_low = 1;   // left column: Z^B_2, its vertex image is 1
  side_a.act_mid = 0;   // middle column: Z^B_1
  side_a.act_high = 2;  // right column: Z^B_3
  SectorSpec<Q> side_b;  // Delta_B: rows
  side_b.center = {frac<Q>(-3, 10), frac<Q>(-1, 5), frac<Q>(3, 2)};
  side_b.edge_v0 = 0;
  side_b.edge_v1 = 1;
  side_b.t_low = frac<Q>(7, 20);   // R = .35
  side_b.t_high = frac<Q>(9, 20);  // R+Q = .45
  side_b.act_low = 2;   // bottom row: Z^A_3
  side_b.act_mid = 0;   // middle row: Z^A_1
  side_b.act_high = 1;  // top row: Z^A_2
  auto g = inverse_design(side_a, side_b, "canonical_mixed_sink_designed");
  // the construction must land in the analyzable class
  auto rep = classify_iip(g);
  if (rep.cls != IipClass::WithoutIip)
    throw internal_consistency_error("designed fixture failed the class check");
  auto eqs = enumerate_equilibria(g);
  if (eqs.records.size() != 1 || eqs.records[0].kind != EqKind::Mixed)
    throw internal_consistency_error("designed fixture does not have a unique mixed NE");
  FixtureEntry entry;
  entry.name = "canonical_theorem2";
  entry.game = g;
  entry.note = "unique mixed sink at the upper-left vertex of Cell V";
  return entry;
}

// Machine-checkable expectations per registry entry; returns failure strings.
inline std::vector<std::string> run_fixture_checks(const FixtureEntry& entry) {
  using Q = mpq_class;
  std::vector<std::string> fails;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
  };
  const auto& g = entry.game;
  auto gd = to_double_game(g);

  auto cfp_tags = [&](const std::vector<std::pair<std::vector<double>, std::vector<double>>>&
                          starts,
                      int max_events = 6000) {
    auto recs = records_to_double(enumerate_equilibria(g).records);
    std::vector<LimitClassification> out;
    IntegrateOptions opt;
    opt.max_events = max_events;
    for (auto& [x, y] : starts) out.push_back(classify_limit(cfp_integrate(gd, x, y, opt), recs));
    return out;
  };

  if (entry.name == "shapley") {
    auto iip = classify_iip(g);
    expect(iip.cls == IipClass::WithIip, "expected an internal indifferent point");
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 1, "expected a unique equilibrium");
    Q third = frac<Q>(1, 3);
    for (auto& w : eqs.records[0].x) expect(w == third, "barycenter x expected");
    for (auto& w : eqs.records[0].y) expect(w == third, "barycenter y expected");
    auto cls = cfp_tags({{{0.5, 0.25, 0.25}, {0.3, 0.4, 0.3}}});
    expect(cls[0].tag == LimitTag::LimitCycle, "cycling expected under the continuous dynamic");
    expect(cls[0].evidence.tail_profile_count >= 6, "expected >= 6 tail action profiles");
  } else if (entry.name == "ostrovski") {
    expect(classify_iip(g).cls == IipClass::WithIip, "expected an internal indifferent point");
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 1, "expected a unique equilibrium");
    Vec<Q> ex = {frac<Q>(288, 1000), frac<Q>(370, 1000), frac<Q>(342, 1000)};
    Vec<Q> ey = {frac<Q>(335, 1000), frac<Q>(327, 1000), frac<Q>(338, 1000)};
    expect(eqs.records[0].x == ex && eqs.records[0].y == ey, "equilibrium values drifted");
    auto recs = records_to_double(eqs.records);
    auto traj = dfp_run(gd, {1, 0, 0}, {0, 1, 0}, 50000);
    auto cls = classify_limit(traj, recs);
    expect(cls.tag != LimitTag::ConvergedToNe, "play should not settle in this game");
    expect(cls.evidence.tail_profile_count >= 4, "expected a rich tail profile set");
  } else if (entry.name == "unique_pure") {
    expect(classify_iip(g).cls == IipClass::WithoutIip, "expected class without-IIP");
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 1 && eqs.records[0].kind == EqKind::Pure,
           "expected a unique pure equilibrium");
    expect(eqs.records[0].support_a == std::vector<int>{2} &&
               eqs.records[0].support_b == std::vector<int>{0},
           "expected the (e3, e1) profile");
    std::vector<std::pair<std::vector<double>, std::vector<double>>> starts;
    for (int i = 0; i < 5; ++i) {
      auto rng = trial_stream(7, i);
      starts.push_back({random_simplex_point(rng, 3), random_simplex_point(rng, 3)});
    }
    for (auto& cls : cfp_tags(starts))
      expect(cls.tag == LimitTag::ConvergedToNe, "expected convergence to the pure NE");
  } else if (entry.name == "comparison_4_1") {
    auto xbar = indifferent_point(g, Player::B);
    auto ybar = indifferent_point(g, Player::A);
    Vec<Q> exb = {frac<Q>(-1, 2), frac<Q>(5, 6), frac<Q>(2, 3)};
    Vec<Q> eyb = {frac<Q>(5, 6), frac<Q>(-1, 2), frac<Q>(2, 3)};
    expect(xbar.status == IndiffStatus::Unique && xbar.point == exb, "xbar value drifted");
    expect(ybar.status == IndiffStatus::Unique && ybar.point == eyb, "ybar value drifted");
    expect(!xbar.is_internal && !ybar.is_internal, "both points must be external");
    expect(classify_iip(g).cls == IipClass::WithoutIip, "expected class without-IIP");
    expect(quasi_supermodular_matrix_a(g.a), "A should satisfy the monotone condition");
    expect(!quasi_supermodular_matrix_b(g.b), "B should fail the monotone condition");
    expect(!is_quasi_supermodular(g), "the game is not quasi-supermodular");
    auto sq = build_projected_square(g);
    auto eqs = enumerate_equilibria(g);
    locate_ne_images(sq, eqs.records);  // throws on a misplaced mixed image
  } else if (entry.name == "degenerate_a_critical") {
    auto nd = check_nondegenerate(g, Q(0));
    expect(!nd.nondegenerate, "the critical game must be degenerate");
    expect(nd.violations.size() == 1 && nd.violations[0].pure_strategy_of == Player::B &&
               nd.violations[0].action == 0,
           "the violation should sit at B's first action");
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 1 && eqs.records[0].kind == EqKind::ContinuumSegment,
           "expected exactly one continuum segment");
    auto cls = cfp_tags({{{0.5, 0.3, 0.2}, {0.2, 0.5, 0.3}}});
    expect(cls[0].tag == LimitTag::ApproachesContinuum,
           "play should approach the segment without settling");
  } else if (entry.name == "degenerate_a_left" || entry.name == "degenerate_a_right") {
    expect(check_nondegenerate(g, Q(0)).nondegenerate, "off-critical games are nondegenerate");
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 1 && eqs.records[0].kind == EqKind::Mixed,
           "expected a unique mixed equilibrium");
  } else if (entry.name == "degenerate_b_critical") {
    auto eqs = enumerate_equilibria(g);
    int segs = 0, isolated = 0;
    for (auto& r : eqs.records) (r.kind == EqKind::ContinuumSegment ? segs : isolated)++;
    expect(segs == 1 && isolated == 1, "expected one segment plus one isolated NE");
    auto cls = cfp_tags({{{0.3, 0.3, 0.4}, {0.25, 0.25, 0.5}}});
    expect(cls[0].tag == LimitTag::ConvergedToNe, "expected endpoint convergence");
  } else if (entry.name == "degenerate_b_right") {
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 3, "expected three equilibria above the shift");
  } else if (entry.name == "canonical_mixed_sink") {
    expect(classify_iip(g).cls == IipClass::WithoutIip, "expected class without-IIP");
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 1 && eqs.records[0].kind == EqKind::Mixed,
           "expected a unique mixed equilibrium");
    auto st = classify_stability(g, eqs.records[0]);
    expect(st.cls == Stability::Sink, "the unique equilibrium should be a sink");
    auto sq = to_double_square(build_projected_square(g));
    auto recs = records_to_double(eqs.records);
    auto img = std::make_pair(to_double(project_point(sq.phi_a, recs[0].x)),
                              to_double(project_point(sq.phi_b, recs[0].y)));
    auto an = build_return_map(sq, img, ReturnConfig::MixedSink);
    for (int i = 1; i <= 5; ++i) {
      double d0 = an.d_C + (an.section_length - an.d_C) * i / 5.0;
      auto sim = simulate_first_return(an.square, d0);
      expect(sim && std::abs(*sim - an.composed8(d0)) < 1e-9,
             "analytic and simulated returns disagree");
    }
  } else if (entry.name == "saddle_sink_pair") {
    auto eqs = enumerate_equilibria(g);
    expect(eqs.records.size() == 3, "expected three equilibria");
    int saddles = 0, sinks = 0, pures = 0;
    for (auto& r : eqs.records) {
      if (r.kind == EqKind::Pure) { pures++; continue; }
      auto st = classify_stability(g, r);
      if (st.cls == Stability::Saddle) saddles++;
      if (st.cls == Stability::Sink) sinks++;
    }
    expect(saddles == 1 && sinks == 1 && pures == 1,
           "expected one saddle, one sink and one pure equilibrium");
  } else if (entry.name == "parallel_lines") {
    auto ybar = indifferent_point(g, Player::A);
    expect(ybar.status == IndiffStatus::ParallelLines, "expected the parallel-lines case");
    expect(classify_iip(g).cls == IipClass::WithoutIip, "expected class without-IIP");
    auto sq = build_projected_square(g);
    expect(sq.phi_b.parallel_mode, "expected a parallel projection on Delta_B");
    auto segs = indifferent_lines(g, Player::A);
    expect(segs.size() == 2, "expected two clipped segments");
    Q img0 = project_point(sq.phi_b, segs[0].p0);
    for (int i = 1; i <= 10; ++i) {
      Q t = frac<Q>(i, 11);
      Vec<Q> pt(3);
      for (int c = 0; c < 3; ++c) pt[c] = segs[0].p0[c] + t * (segs[0].p1[c] - segs[0].p0[c]);
      expect(project_point(sq.phi_b, pt) == img0, "a line should collapse to one point");
    }
  } else if (entry.name == "four_by_four") {
    auto ip = indifferent_point(g, Player::A);
    Vec<Q> expected = {frac<Q>(-5, 2988), frac<Q>(185, 747), frac<Q>(1471, 1494),
                       frac<Q>(-689, 2988)};
    expect(ip.status == IndiffStatus::Unique && ip.point == expected,
           "indifferent point value drifted");
    FaceProjection<Q> fp{ip.point};
    auto img = project_to_face(fp, Vec<Q>{Q(0), Q(0), Q(0), Q(1)});
    Vec<Q> eimg = {frac<Q>(-5, 3677), frac<Q>(740, 3677), frac<Q>(2942, 3677)};
    expect(img == eimg, "face image of e4 drifted");
  }
  return fails;
}

inline std::vector<FixtureEntry> fixture_registry() {
  using Q = mpq_class;
  std::vector<FixtureEntry> out;
  out.push_back({"shapley", fixtures::shapley(), "cycling fully mixed game"});
  out.push_back({"ostrovski", fixtures::ostrovski(), "non-convergent fully mixed game"});
  out.push_back({"unique_pure", fixtures::unique_pure(), "narrow regions, pure NE"});
  out.push_back({"comparison_4_1", fixtures::comparison_4_1(), "not quasi-supermodular"});
  out.push_back({"degenerate_a_critical", fixtures::degenerate_family_a(frac<Q>(-2, 3)),
                 "continuum of equilibria, orbiting play"});
  out.push_back({"degenerate_a_left", fixtures::degenerate_family_a(frac<Q>(-2, 3) - frac<Q>(1, 10)),
                 "unique NE below the shift"});
  out.push_back({"degenerate_a_right", fixtures::degenerate_family_a(frac<Q>(-2, 3) + frac<Q>(1, 10)),
                 "unique NE above the shift"});
  out.push_back({"degenerate_b_critical", fixtures::degenerate_family_b(frac<Q>(-2, 3)),
                 "segment plus isolated NE, play picks one endpoint"});
  out.push_back({"degenerate_b_right", fixtures::degenerate_family_b(frac<Q>(-2, 3) + frac<Q>(1, 10)),
                 "three equilibria"});
  out.push_back({"canonical_mixed_sink", fixtures::canonical_mixed_sink(),
                 "unique mixed sink, canonical square"});
  out.push_back({"saddle_sink_pair", fixtures::saddle_sink_pair(), "saddle and sink together"});
  out.push_back({"parallel_lines", fixtures::parallel_lines(), "parallel indifference lines"});
  out.push_back({"four_by_four", fixtures::four_by_four_game(), "divergent symmetric play"});
  return out;
}

}  // namespace fictplay
