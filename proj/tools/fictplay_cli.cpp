// fictplay: geometric analysis and event-driven simulation of small bimatrix
// games: indifference geometry, the nine-cell square projection, the
// fictitious-play family of dynamics, analytic return maps and the
// experiment harness.
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "fictplay/experiments.hpp"
#include "fictplay/io.hpp"
#include "fictplay/svg.hpp"

using namespace fictplay;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitExpectation = 3;
constexpr int kExitUnsupported = 4;

const char* iip_name(IipClass c) {
  switch (c) {
    case IipClass::WithIip: return "with-IIP";
    case IipClass::WithoutIip: return "without-IIP";
    case IipClass::Reducible: return "reducible";
  }
  return "?";
}

const char* stab_name(Stability s) {
  switch (s) {
    case Stability::Pure: return "pure";
    case Stability::Saddle: return "saddle";
    case Stability::Sink: return "sink";
    case Stability::Unclassified: return "unclassified";
  }
  return "?";
}

const char* kind_name(EqKind k) {
  switch (k) {
    case EqKind::Pure: return "pure";
    case EqKind::Mixed: return "mixed";
    case EqKind::ContinuumSegment: return "continuum-segment";
  }
  return "?";
}

const char* limit_name(LimitTag t) {
  switch (t) {
    case LimitTag::ConvergedToNe: return "ConvergedToNE";
    case LimitTag::ConvergedToPoint: return "ConvergedToPoint";
    case LimitTag::LimitCycle: return "LimitCycle";
    case LimitTag::ApproachesContinuum: return "ApproachesContinuum";
    case LimitTag::Divergent: return "Divergent";
    case LimitTag::Undetermined: return "Undetermined";
  }
  return "?";
}

template <class T>
json vec_json(const Vec<T>& v) {
  json a = json::array();
  for (auto& w : v) a.push_back(to_double(w));
  return a;
}

template <class T>
std::string vec_str(const Vec<T>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if constexpr (num_traits<T>::exact) os << format_rational(v[i]);
    else os << v[i];
    if (i + 1 < v.size()) os << ", ";
  }
  os << ")";
  return os.str();
}

template <class T>
int run_analyze(const BimatrixGame<T>& g, const std::string& json_out,
                const std::string& svg_prefix) {
  json rep;
  rep["schema"] = 1;
  rep["name"] = g.name;
  std::cout << "game: " << (g.name.empty() ? "(unnamed)" : g.name) << "  " << g.rows << "x"
            << g.cols << (num_traits<T>::exact ? "  [exact rational]" : "  [float]") << "\n";

  auto nd = check_nondegenerate(g, num_traits<T>::tol());
  std::cout << "nondegenerate: " << (nd.nondegenerate ? "yes" : "no") << "\n";
  rep["nondegenerate"] = nd.nondegenerate;
  rep["violations"] = json::array();
  for (auto& v : nd.violations) {
    std::cout << "  non-unique reply to " << (v.pure_strategy_of == Player::A ? "A" : "B")
              << "'s action " << v.action + 1 << "\n";
    rep["violations"].push_back(
        {{"player", v.pure_strategy_of == Player::A ? "A" : "B"}, {"action", v.action + 1}});
  }
  std::cout << "quasi-supermodular: " << (is_quasi_supermodular(g) ? "yes" : "no")
            << "  (A-condition " << (quasi_supermodular_matrix_a(g.a) ? "holds" : "fails")
            << ", B-condition " << (quasi_supermodular_matrix_b(g.b) ? "holds" : "fails")
            << ");  supermodular: " << (is_supermodular(g) ? "yes" : "no") << "\n";
  rep["quasi_supermodular"] = is_quasi_supermodular(g);
  rep["supermodular"] = is_supermodular(g);

  bool square_game = g.rows == g.cols && g.rows >= 3 && g.rows <= 4;
  if (square_game) {
    auto xbar = indifferent_point(g, Player::B);
    auto ybar = indifferent_point(g, Player::A);
    auto show = [&](const char* label, const IndifferentPointResult<T>& ip, const char* key) {
      std::cout << label << ": ";
      if (ip.status == IndiffStatus::Unique) {
        std::cout << vec_str(ip.point) << (ip.is_internal ? "  [internal]" : "  [external]");
        rep[key] = vec_json(ip.point);
      } else if (ip.status == IndiffStatus::ParallelLines) {
        std::cout << "absent (parallel indifference lines)";
        rep[key] = "parallel";
      } else {
        std::cout << "absent (singular system)";
        rep[key] = "singular";
      }
      std::cout << "\n";
    };
    show("indifferent point in Delta_A (from B)", xbar, "xbar");
    show("indifferent point in Delta_B (from A)", ybar, "ybar");
  }

  bool proj_ok = false;
  if (g.rows == 3 && g.cols == 3) {
    auto iip = classify_iip(g);
    std::cout << "class: " << iip_name(iip.cls) << "\n";
    rep["class"] = iip_name(iip.cls);
    proj_ok = iip.cls == IipClass::WithoutIip;
    if (proj_ok) {
      auto pat = indifference_pattern(g, Player::A);
      const char* pname = pat == IndiffPattern::OneEdgeTwice ? "one edge crossed twice"
                          : pat == IndiffPattern::TwoEdgesTwice ? "two edges crossed twice"
                                                                : "other";
      std::cout << "indifference pattern (Delta_B): " << pname << "\n";
      rep["pattern"] = pname;
    }
  }

  auto eqs = enumerate_equilibria(g);
  std::cout << "equilibria: " << eqs.records.size() << "\n";
  rep["equilibria"] = json::array();
  for (auto& r : eqs.records) {
    if (proj_ok && r.kind == EqKind::Mixed && r.support_a.size() == 2 &&
        r.support_b.size() == 2)
      r.stability = classify_stability(g, r).cls;
    std::cout << "  " << kind_name(r.kind);
    if (r.kind == EqKind::ContinuumSegment)
      std::cout << "  from x=" << vec_str(r.x_end1) << " y=" << vec_str(r.y_end1)
                << "  to x=" << vec_str(r.x_end2) << " y=" << vec_str(r.y_end2);
    else
      std::cout << "  x=" << vec_str(r.x) << "  y=" << vec_str(r.y);
    const char* st = proj_ok || r.kind == EqKind::Pure ? stab_name(r.stability) : "unavailable";
    std::cout << "  stability: " << st << "\n";
    rep["equilibria"].push_back({{"kind", kind_name(r.kind)},
                                 {"x", vec_json(r.x)},
                                 {"y", vec_json(r.y)},
                                 {"stability", st}});
  }
  if (eqs.degenerate_unsupported)
    std::cout << "note: a higher-dimensional equilibrium family was detected and skipped\n";

  if (!svg_prefix.empty() && g.rows == 3 && g.cols == 3) {
    {
      std::ofstream os(svg_prefix + "_delta_a.svg");
      svg::write_simplex(os, g, Player::B);
    }
    {
      std::ofstream os(svg_prefix + "_delta_b.svg");
      svg::write_simplex(os, g, Player::A);
    }
    if (proj_ok) {
      auto sq = build_projected_square(g);
      std::vector<std::pair<double, double>> imgs;
      for (auto& r : eqs.records) {
        auto img = project_profile(sq, r.x, r.y);
        imgs.push_back({to_double(img.first), to_double(img.second)});
      }
      std::ofstream os(svg_prefix + "_square.svg");
      svg::write_square(os, sq, imgs);
    }
  }
  if (!json_out.empty()) std::ofstream(json_out) << rep.dump(2) << "\n";
  return kExitOk;
}

template <class T>
int run_project(const BimatrixGame<T>& g, const std::string& json_out,
                const std::string& svg_out) {
  auto sq = build_projected_square(g);
  auto sqd = to_double_square(sq);
  std::cout << "projection: Delta_A -> edge e" << sq.phi_a.edge_v0 + 1 << "e"
            << sq.phi_a.edge_v1 + 1 << (sq.phi_a.parallel_mode ? " (parallel)" : "")
            << ", Delta_B -> edge e" << sq.phi_b.edge_v0 + 1 << "e" << sq.phi_b.edge_v1 + 1
            << (sq.phi_b.parallel_mode ? " (parallel)" : "") << "\n";
  std::cout << "widths p,q,r = " << sqd.p << ", " << sqd.q << ", " << sqd.r
            << "   heights P,Q,R = " << sqd.P << ", " << sqd.Q << ", " << sqd.R << "\n";
  std::cout << "interior vertex images: x-axis " << sqd.ea_img[sqd.interior_ea] << " (offset "
            << sqd.m_off << "), y-axis " << sqd.eb_img[sqd.interior_eb] << " (offset "
            << sqd.M_off << ")\n";
  static const char* names[9] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"};
  json rep;
  rep["schema"] = 1;
  rep["u"] = {sqd.u1, sqd.u2};
  rep["v"] = {sqd.v1, sqd.v2};
  rep["ea_images"] = sqd.ea_img;
  rep["eb_images"] = sqd.eb_img;
  rep["cells"] = json::array();
  for (auto& c : sqd.cells) {
    std::cout << "  cell " << names[c.label] << ": x [" << c.x0 << ", " << c.x1 << "]  y ["
              << c.y0 << ", " << c.y1 << "]  pair (B" << c.b_action + 1 << ", A"
              << c.a_action + 1 << ")  target (" << c.tx << ", " << c.ty << ")\n";
    rep["cells"].push_back({{"label", names[c.label]},
                            {"x", {c.x0, c.x1}},
                            {"y", {c.y0, c.y1}},
                            {"b_action", c.b_action + 1},
                            {"a_action", c.a_action + 1},
                            {"target", {c.tx, c.ty}}});
  }
  if (!json_out.empty()) std::ofstream(json_out) << rep.dump(2) << "\n";
  if (!svg_out.empty()) {
    auto eqs = enumerate_equilibria(g);
    std::vector<std::pair<double, double>> imgs;
    for (auto& r : eqs.records) {
      auto img = project_profile(sq, r.x, r.y);
      imgs.push_back({to_double(img.first), to_double(img.second)});
    }
    std::ofstream os(svg_out);
    svg::write_square(os, sq, imgs);
  }
  return kExitOk;
}

template <class T>
int run_poincare(const BimatrixGame<T>& g, const std::string& json_out) {
  auto sq = to_double_square(build_projected_square(g));
  auto recs = records_to_double(enumerate_equilibria(g).records);
  if (recs.size() != 1)
    throw unsupported_configuration("return-map analysis needs a unique equilibrium");
  auto img = std::make_pair(project_point(sq.phi_a, recs[0].x),
                            project_point(sq.phi_b, recs[0].y));
  ReturnConfig cfg = recs[0].kind == EqKind::Pure ? ReturnConfig::PureNe
                                                  : ReturnConfig::MixedSink;
  auto an = build_return_map(sq, img, cfg);
  auto cert = verify_contraction(an);
  std::cout << "configuration: " << (cfg == ReturnConfig::PureNe ? "pure" : "mixed sink")
            << "\nnormalized square: p,q,r = " << an.p << ", " << an.q << ", " << an.r
            << "   P,Q,R = " << an.P << ", " << an.Q << ", " << an.R << "   M = " << an.M
            << "   m = " << an.m << "\n";
  std::cout << "section (0, " << an.section_length << "], thresholds d_c = " << an.d_c
            << ", d_C = " << an.d_C << "\n";
  json rep;
  rep["schema"] = 1;
  rep["config"] = cfg == ReturnConfig::PureNe ? "pure" : "mixed-sink";
  rep["params"] = {{"p", an.p}, {"q", an.q}, {"r", an.r}, {"P", an.P},
                   {"Q", an.Q}, {"R", an.R}, {"M", an.M}, {"m", an.m}};
  rep["d_c"] = an.d_c;
  rep["d_C"] = an.d_C;
  rep["stages"] = json::array();
  for (auto& st : an.stages) {
    std::cout << "  " << st.stage_label << ": d -> (" << st.a << "*d + " << st.b << ") / ("
              << st.c << "*d + " << st.e << ")\n";
    rep["stages"].push_back(
        {{"label", st.stage_label}, {"coeffs", {st.a, st.b, st.c, st.e}}});
  }
  double worst = 0;
  int compared = 0;
  for (int i = 1; i <= 20; ++i) {
    double d0 = an.d_C + (an.section_length - an.d_C) * i / 20.0;
    auto sim = simulate_first_return(an.square, d0);
    if (!sim) continue;
    worst = std::max(worst, std::abs(an.composed8(d0) - *sim));
    ++compared;
  }
  std::cout << "analytic vs simulated first return: " << compared
            << " section points, max |difference| = " << worst << "\n";
  std::cout << "contraction: sup f' = " << cert.sup_fprime << " (bound "
            << cert.analytic_bound << "), min d - f(d) = " << cert.min_gap
            << ", full loop collapses after " << cert.iterations_to_exit << " iterations => "
            << (cert.ok ? "contractive" : "VIOLATED") << "\n";
  rep["oracle_points"] = compared;
  rep["oracle_max_diff"] = worst;
  rep["contraction"] = {{"ok", cert.ok},
                        {"sup_fprime", cert.sup_fprime},
                        {"analytic_bound", cert.analytic_bound},
                        {"printed_form_bound", cert.printed_form_bound},
                        {"min_gap", cert.min_gap},
                        {"iterations_to_exit", cert.iterations_to_exit}};
  if (!json_out.empty()) std::ofstream(json_out) << rep.dump(2) << "\n";
  return cert.ok && compared == 20 && worst < 1e-9 ? kExitOk : kExitExpectation;
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  return v;
}

int run_simulate(const GameVariant& gv, const std::string& kind, const std::string& start,
                 const std::string& random_spec, const std::string& face_start, long steps,
                 int max_events, const std::string& csv_out) {
  BimatrixGame<double> g = std::holds_alternative<BimatrixGame<double>>(gv)
                               ? std::get<BimatrixGame<double>>(gv)
                               : to_double_game(std::get<BimatrixGame<mpq_class>>(gv));
  IntegrateOptions opt;
  if (max_events > 0) opt.max_events = max_events;

  if (kind == "sym-brd") {
    std::vector<double> x0;
    TrajectoryRecord tr;
    if (!face_start.empty()) {
      auto xy = parse_point(face_start);
      if (xy.size() != 2) throw input_error("--start-face needs two coordinates");
      auto fp = build_face_projection(g.a);
      auto z3 = face_frame_point(xy[0], xy[1]);
      std::vector<double> z4 = {z3[0], z3[1], z3[2], 0.0};
      x0.resize(4);
      for (int c = 0; c < 4; ++c) x0[c] = fp.center[c] + 1.05 * (z4[c] - fp.center[c]);
      tr = sym_brd_integrate(g.a, x0, opt);
      auto ret = sym_face_first_return(g.a, fp, {xy[0], xy[1]});
      if (ret)
        std::cout << "section return: (" << ret->first << ", " << ret->second << ")\n";
      else
        std::cout << "no section return found\n";
    } else if (!start.empty()) {
      x0 = parse_point(start);
      if ((int)x0.size() != g.rows) throw input_error("--start needs n weights for sym-brd");
      tr = sym_brd_integrate(g.a, x0, opt);
    } else {
      throw input_error("sym-brd needs --start or --start-face");
    }
    std::cout << "events: " << tr.events.size() << ", terminal x = (";
    for (size_t i = 0; i < tr.terminal_x.size(); ++i)
      std::cout << tr.terminal_x[i] << (i + 1 < tr.terminal_x.size() ? ", " : ")\n");
    if (!csv_out.empty()) {
      std::ofstream os(csv_out);
      write_trajectory_csv(os, tr);
    }
    return kExitOk;
  }

  std::vector<EquilibriumRecord<double>> recs;
  if (std::holds_alternative<BimatrixGame<mpq_class>>(gv))
    recs =
        records_to_double(enumerate_equilibria(std::get<BimatrixGame<mpq_class>>(gv)).records);
  else
    recs = enumerate_equilibria(g).records;

  std::vector<std::pair<std::vector<double>, std::vector<double>>> starts;
  if (!random_spec.empty()) {
    auto colon = random_spec.find(':');
    uint64_t seed = std::stoull(random_spec.substr(0, colon));
    int count = colon == std::string::npos ? 1 : std::stoi(random_spec.substr(colon + 1));
    for (int i = 0; i < count; ++i) {
      auto rng = trial_stream(seed, i);
      starts.push_back({random_simplex_point(rng, g.rows), random_simplex_point(rng, g.cols)});
    }
  } else if (!start.empty()) {
    auto v = parse_point(start);
    if ((int)v.size() != g.rows + g.cols) throw input_error("--start needs n+m weights");
    starts.push_back({std::vector<double>(v.begin(), v.begin() + g.rows),
                      std::vector<double>(v.begin() + g.rows, v.end())});
  } else {
    throw input_error("simulate needs --start or --random seed:count");
  }

  std::map<std::string, int> tally;
  TrajectoryRecord last;
  for (auto& [x0, y0] : starts) {
    TrajectoryRecord tr;
    if (kind == "dfp") {
      tr = dfp_run(g, x0, y0, steps);
    } else if (kind == "cfp") {
      tr = cfp_integrate(g, x0, y0, opt);
    } else if (kind == "brd") {
      tr = brd_integrate(g, x0, y0, opt);
    } else if (kind == "pbrd") {
      if (!std::holds_alternative<BimatrixGame<mpq_class>>(gv))
        throw unsupported_configuration("pbrd needs an exact-rational game file");
      auto sq =
          to_double_square(build_projected_square(std::get<BimatrixGame<mpq_class>>(gv)));
      tr = pbrd_integrate(sq, project_point(sq.phi_a, x0), project_point(sq.phi_b, y0), opt);
    } else {
      throw input_error("unknown --kind: " + kind);
    }
    tally[limit_name(classify_limit(tr, recs).tag)]++;
    last = tr;
  }
  for (auto& [name, count] : tally)
    std::cout << name << ": " << count << "/" << starts.size() << "\n";
  if (!csv_out.empty()) {
    std::ofstream os(csv_out);
    write_trajectory_csv(os, last);
  }
  return kExitOk;
}

int run_sample(int dim, long trials, uint64_t seed, const std::string& json_out) {
  auto rep = run_sampling_study(dim, trials, seed);
  std::cout << "dimension " << rep.dimension << ", trials " << rep.trials << ", seed "
            << rep.seed << ": " << rep.count_without_iip
            << " external indifferent points, proportion = " << rep.proportion << " ("
            << rep.wall_time_seconds << " s)\n";
  if (!json_out.empty()) {
    json j = {{"schema", 1},
              {"dimension", rep.dimension},
              {"trials", rep.trials},
              {"seed", rep.seed},
              {"count_without_iip", rep.count_without_iip},
              {"count_singular", rep.count_singular},
              {"proportion", rep.proportion},
              {"wall_time_seconds", rep.wall_time_seconds}};
    std::ofstream(json_out) << j.dump(2) << "\n";
  }
  return kExitOk;
}

int run_sweep(const std::string& family, bool no_dynamics, const std::string& json_out) {
  SweepFamily f = family == "b" ? SweepFamily::ExampleB : SweepFamily::ExampleA;
  auto rep = run_parameter_sweep(f, default_sweep_grid(), !no_dynamics);
  std::cout << "family " << family << ": " << rep.rows.size() << " grid points\n";
  json jrows = json::array();
  for (auto& row : rep.rows) {
    jrows.push_back({{"k", to_double(row.k)},
                     {"class", iip_name(row.iip)},
                     {"nondegenerate", row.nondegenerate},
                     {"isolated", row.isolated_count},
                     {"segments", row.segment_count},
                     {"signature", row.signature}});
  }
  for (auto& s : rep.shift_points)
    std::cout << "regime shift near k = " << to_double(s) << "\n";
  if (!json_out.empty()) {
    json j = {{"schema", 1}, {"family", family}, {"rows", jrows}};
    j["shift_points"] = json::array();
    for (auto& s : rep.shift_points) j["shift_points"].push_back(to_double(s));
    std::ofstream(json_out) << j.dump(2) << "\n";
  }
  return kExitOk;
}

int run_examples(bool list_only, const std::string& only) {
  int failures = 0;
  for (auto& entry : fixture_registry()) {
    if (!only.empty() && entry.name != only) continue;
    if (list_only) {
      std::cout << entry.name << ": " << entry.note << "\n";
      continue;
    }
    auto fails = run_fixture_checks(entry);
    if (fails.empty()) {
      std::cout << "[PASS] " << entry.name << "\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << entry.name << "\n";
      for (auto& f : fails) std::cout << "   - " << f << "\n";
    }
  }
  return failures == 0 ? kExitOk : kExitExpectation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric analysis and learning dynamics for small bimatrix games"};
  app.require_subcommand(1);
  std::cout.precision(12);

  std::string game_path, json_out, svg_out, svg_prefix, csv_out;
  std::string kind = "cfp", start, random_spec, face_start, family = "a", run_name;
  long steps = 100000;
  int max_events = 0, dim = 3;
  long trials = 100000;
  uint64_t seed = 1;
  bool list_only = false, no_dynamics = false;

  auto* analyze = app.add_subcommand("analyze", "classify a game and list its equilibria");
  analyze->add_option("game", game_path, "game JSON file")->required();
  analyze->add_option("--json", json_out, "write a JSON report");
  analyze->add_option("--svg", svg_prefix, "prefix for diagnostic SVG output");

  auto* project = app.add_subcommand("project", "build the nine-cell projected square");
  project->add_option("game", game_path)->required();
  project->add_option("--json", json_out);
  project->add_option("--svg", svg_out);

  auto* poincare = app.add_subcommand("poincare", "analytic return-map report");
  poincare->add_option("game", game_path)->required();
  poincare->add_option("--json", json_out);

  auto* simulate = app.add_subcommand("simulate", "run a learning dynamic");
  simulate->add_option("game", game_path)->required();
  simulate->add_option("--kind", kind, "dfp | cfp | brd | pbrd | sym-brd");
  simulate->add_option("--start", start, "comma-separated weights (x then y)");
  simulate->add_option("--random", random_spec, "seed:count random starts");
  simulate->add_option("--start-face", face_start, "sym-brd: planar face coordinates a,b");
  simulate->add_option("--steps", steps, "dfp iteration count");
  simulate->add_option("--max-events", max_events, "event cap for the continuous dynamics");
  simulate->add_option("--csv", csv_out, "trajectory CSV path");

  auto* sample = app.add_subcommand("sample", "indifference-point sampling study");
  sample->add_option("--dim", dim)->check(CLI::Range(3, 6));
  sample->add_option("--trials", trials);
  sample->add_option("--seed", seed);
  sample->add_option("--json", json_out);

  auto* sweep = app.add_subcommand("sweep", "parameter sweep over a degenerate family");
  sweep->add_option("--family", family)->check(CLI::IsMember({"a", "b"}));
  sweep->add_option("--json", json_out);
  sweep->add_flag("--no-dynamics", no_dynamics);

  auto* examples = app.add_subcommand("examples", "run the built-in fixture expectations");
  examples->add_flag("--list", list_only);
  examples->add_option("--name", run_name, "run a single fixture");

  CLI11_PARSE(app, argc, argv);

  try {
    if (examples->parsed()) return run_examples(list_only, run_name);
    if (sample->parsed()) return run_sample(dim, trials, seed, json_out);
    if (sweep->parsed()) return run_sweep(family, no_dynamics, json_out);

    GameVariant gv = load_game(game_path);
    auto dispatch = [&](auto&& fn) {
      return std::visit([&](auto& g) { return fn(g); }, gv);
    };
    if (analyze->parsed())
      return dispatch([&](auto& g) { return run_analyze(g, json_out, svg_prefix); });
    if (project->parsed())
      return dispatch([&](auto& g) { return run_project(g, json_out, svg_out); });
    if (poincare->parsed())
      return dispatch([&](auto& g) { return run_poincare(g, json_out); });
    if (simulate->parsed())
      return run_simulate(gv, kind, start, random_spec, face_start, steps, max_events,
                          csv_out);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const unsupported_configuration& e) {
    std::cerr << "unsupported configuration: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const internal_consistency_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitExpectation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
