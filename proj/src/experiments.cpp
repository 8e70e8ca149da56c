#include "pubchoice/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include "pubchoice/format.hpp"
#include <fstream>
#include <map>
#include <set>

namespace pubchoice::experiments {

namespace {

using nlohmann::json;

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

VenueImpacts random_start(Rng& rng, const GameSpec& spec) {
  VenueImpacts v(spec.n_venues(), 0.0);
  for (std::size_t j = 0; j < spec.n_venues(); ++j)
    v[j] = rng.uniform(spec.thetas.front(), spec.thetas.back());
  return v;
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key))
      throw ConfigError(pubchoice::format("unknown key '{}' in {}", key, where));
  }
}

json violations_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (const auto& v : violations) arr.push_back({{"code", v.code}, {"detail", v.detail}});
  return arr;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

GameSpec build_appendix_game(double g, std::size_t n_types, std::size_t n_venues,
                             double budget) {
  if (!(g > 0.0)) throw ConfigError("cost growth rate g must be positive");
  if (n_types == 0 || n_types > 5) throw ConfigError("parametric family supports 1..5 types");
  static constexpr double kMassTable[5] = {0.50, 0.25, 0.15, 0.07, 0.03};

  GameSpec spec;
  spec.alpha = 0.2;
  spec.beta = 2.0;
  spec.budget = budget;
  double mass_sum = 0.0;
  for (std::size_t i = 0; i < n_types; ++i) mass_sum += kMassTable[i];
  for (std::size_t i = 0; i < n_types; ++i) {
    const double idx = static_cast<double>(i + 1);
    spec.thetas.push_back(idx * idx);
    spec.masses.push_back(kMassTable[i] / mass_sum);
  }
  spec.costs = Matrix(n_types, n_venues);
  for (std::size_t i = 0; i < n_types; ++i) {
    spec.costs(i, 0) = 1.0;
    for (std::size_t j = 1; j < n_venues; ++j) {
      const double ji = static_cast<double>(j + 1), ii = static_cast<double>(i + 1);
      spec.costs(i, j) = std::exp(g * ji * ji / (ii * ii));
    }
  }
  return spec;
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  require_keys(doc, {"game", "experiment", "spotlight"}, "config root");

  if (doc.contains("game")) {
    const json& game = doc.at("game");
    if (game.contains("g") || game.contains("n_types") || game.contains("n_venues")) {
      require_keys(game, {"g", "n_types", "n_venues", "budget", "alpha", "beta", "z"},
                   "game (parametric)");
      cfg.g = game.value("g", cfg.g);
      cfg.n_types = game.value("n_types", cfg.n_types);
      cfg.n_venues = game.value("n_venues", cfg.n_venues);
      cfg.game = build_appendix_game(cfg.g, cfg.n_types, cfg.n_venues,
                                     game.value("budget", 40.0));
      cfg.game.alpha = game.value("alpha", cfg.game.alpha);
      cfg.game.beta = game.value("beta", cfg.game.beta);
      // "z" is accepted for config fidelity but never enters the cost rule.
    } else {
      require_keys(game, {"thetas", "masses", "costs", "alpha", "beta", "budget"},
                   "game (explicit)");
      cfg.parametric = false;
      try {
        cfg.game.thetas = game.at("thetas").get<std::vector<double>>();
        cfg.game.masses = game.at("masses").get<std::vector<double>>();
        cfg.game.costs =
            Matrix::from_rows(game.at("costs").get<std::vector<std::vector<double>>>());
        cfg.game.alpha = game.value("alpha", 0.2);
        cfg.game.beta = game.value("beta", 2.0);
        cfg.game.budget = game.value("budget", 1.0);
      } catch (const json::exception& e) {
        throw ConfigError(pubchoice::format("bad explicit game: {}", e.what()));
      }
      const auto report = validate_game(cfg.game);
      if (!report.ok())
        throw ConfigError(pubchoice::format("invalid game: {} ({})", report.violations[0].code,
                                      report.violations[0].detail));
    }
  } else {
    cfg.game = build_appendix_game(cfg.g, cfg.n_types, cfg.n_venues, 40.0);
  }

  if (doc.contains("experiment")) {
    const json& exp = doc.at("experiment");
    require_keys(exp,
                 {"kind", "seed", "eps", "max_rounds", "n_starts", "g_values", "ratios",
                  "venues"},
                 "experiment");
    cfg.kind = exp.value("kind", cfg.kind);
    cfg.seed = exp.value("seed", cfg.seed);
    cfg.eps = exp.value("eps", cfg.eps);
    cfg.max_rounds = exp.value("max_rounds", cfg.max_rounds);
    cfg.n_starts = exp.value("n_starts", cfg.n_starts);
    if (exp.contains("g_values")) cfg.g_values = exp.at("g_values").get<std::vector<double>>();
    if (exp.contains("ratios")) cfg.ratios = exp.at("ratios").get<std::vector<double>>();
    if (exp.contains("venues"))
      cfg.venues = exp.at("venues").get<std::vector<std::size_t>>();
  }

  if (doc.contains("spotlight")) {
    const json& sp = doc.at("spotlight");
    require_keys(sp, {"venue", "ratio", "p"}, "spotlight");
    cfg.has_spotlight = true;
    cfg.sp_venue = sp.value("venue", cfg.sp_venue);
    cfg.sp_ratio = sp.value("ratio", cfg.sp_ratio);
    cfg.sp_p = sp.value("p", cfg.sp_p);
    if (!(cfg.sp_ratio > 0.0 && cfg.sp_ratio < 1.0))
      throw ConfigError("spotlight ratio must lie in (0,1)");
    if (cfg.sp_venue == 0 || cfg.sp_venue > cfg.game.n_venues())
      throw ConfigError("spotlight venue out of range (venues are 1-based)");
  }

  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
  if (cfg.n_starts < 1) throw ConfigError("n_starts must be at least 1");
  if (cfg.g_values.empty() || cfg.ratios.empty())
    throw ConfigError("sweep value lists must be non-empty");

  cfg.echo = json{
      {"game",
       cfg.parametric
           ? json{{"g", cfg.g},
                  {"n_types", cfg.n_types},
                  {"n_venues", cfg.n_venues},
                  {"budget", cfg.game.budget},
                  {"alpha", cfg.game.alpha},
                  {"beta", cfg.game.beta}}
           : json{{"thetas", cfg.game.thetas},
                  {"masses", cfg.game.masses},
                  {"alpha", cfg.game.alpha},
                  {"beta", cfg.game.beta},
                  {"budget", cfg.game.budget}}},
      {"experiment",
       {{"kind", cfg.kind},
        {"seed", cfg.seed},
        {"eps", cfg.eps},
        {"max_rounds", cfg.max_rounds},
        {"n_starts", cfg.n_starts},
        {"g_values", cfg.g_values},
        {"ratios", cfg.ratios},
        {"venues", cfg.venues}}},
  };
  if (cfg.has_spotlight)
    cfg.echo["spotlight"] = {{"venue", cfg.sp_venue}, {"ratio", cfg.sp_ratio}, {"p", cfg.sp_p}};
  return cfg;
}

StudyResult run_equilibrate(const ExperimentConfig& cfg) {
  StudyResult res;
  res.kind = "equilibrate";
  const auto eq = equilibrate(cfg.game, default_initial(cfg.game), cfg.eps, cfg.max_rounds);
  res.table.columns = {"venue", "impact"};
  for (std::size_t j = 0; j < eq.impacts.size(); ++j)
    res.table.rows.push_back({std::to_string(j + 1), format_double(eq.impacts[j])});
  res.details = {{"rounds", eq.rounds},
                 {"residual", eq.residual},
                 {"converged", eq.converged},
                 {"actions", eq.actions.a.data}};
  if (!eq.converged) {
    res.numeric_failure = true;
    res.violations.push_back({"non_convergence", "dynamics hit the round cap"});
  }
  return res;
}

StudyResult run_binary_root(const ExperimentConfig& cfg) {
  if (cfg.game.n_types() != 2)
    throw ConfigError("binary-root requires a two-type game");
  StudyResult res;
  res.kind = "binary-root";
  const auto g = BinaryGame::from_spec(cfg.game);
  const auto eq = solve_equilibrium_root(g);
  res.table.columns = {"venue", "impact"};
  for (std::size_t j = 0; j < eq.impacts.size(); ++j)
    res.table.rows.push_back({std::to_string(j + 1), format_double(eq.impacts[j])});
  res.details = {{"x", eq.x},
                 {"assumptions_ok", eq.assumptions_ok},
                 {"sign_changes", eq.sign_changes},
                 {"actions", eq.actions.a.data}};
  return res;
}

StudyResult run_spotlight(const ExperimentConfig& cfg) {
  if (!cfg.has_spotlight) throw ConfigError("spotlight run requires a spotlight section");
  StudyResult res;
  res.kind = "spotlight";
  const auto sp =
      solve_selection_scale(cfg.game, cfg.sp_venue - 1, 1.0 / cfg.sp_ratio, cfg.sp_p);
  const auto eq = equilibrate_spotlight(cfg.game, sp, cfg.eps, cfg.max_rounds);
  res.table.columns = {"venue", "regular_impact", "overall_impact"};
  for (std::size_t j = 0; j < eq.base.impacts.size(); ++j)
    res.table.rows.push_back({std::to_string(j + 1), format_double(eq.base.impacts[j]),
                              format_double(eq.overall_impacts[j])});
  res.details = {{"gamma", sp.gamma},
                 {"gamma_gt_one", sp.gamma_gt_one},
                 {"selection_scale", sp.selection_scale},
                 {"r", sp.r},
                 {"r_floor_ok", sp.r_floor_ok},
                 {"spot_actual_impact", eq.spot_actual_impact},
                 {"rounds", eq.base.rounds},
                 {"converged", eq.base.converged}};
  if (!eq.base.converged) {
    res.numeric_failure = true;
    res.violations.push_back({"non_convergence", "spotlight dynamics hit the round cap"});
  }
  return res;
}

StudyResult run_convergence_study(const ExperimentConfig& cfg) {
  StudyResult res;
  res.kind = "convergence";
  Rng rng(cfg.seed);
  res.table.columns = {"start_id", "seed", "rounds", "residual", "converged"};
  std::map<int, int> histogram;
  for (int s = 0; s < cfg.n_starts; ++s) {
    const auto start = random_start(rng, cfg.game);
    const auto eq = equilibrate(cfg.game, start, cfg.eps, cfg.max_rounds);
    ++histogram[eq.rounds];
    res.table.rows.push_back({std::to_string(s), std::to_string(cfg.seed),
                              std::to_string(eq.rounds), format_double(eq.residual),
                              eq.converged ? "1" : "0"});
    if (!eq.converged)
      res.violations.push_back(
          {"non_convergence", pubchoice::format("start {} hit the round cap", s)});
  }
  json hist = json::object();
  for (const auto& [rounds, count] : histogram) hist[std::to_string(rounds)] = count;
  res.details = {{"histogram", hist}};
  return res;
}

StudyResult run_uniqueness_study(const ExperimentConfig& cfg) {
  StudyResult res;
  res.kind = "uniqueness";
  if (cfg.n_starts < 2) throw ConfigError("uniqueness study needs at least 2 starts");
  res.table.columns = {"scenario", "max_pairwise_distance", "pass"};

  // Each start is equilibrated two orders of magnitude tighter than the
  // scatter bound, so residual drift does not mask a genuine second
  // equilibrium.
  const double tol = cfg.eps / 100.0;
  auto run_scenario = [&](const std::string& name, const SpotlightSpec* sp) {
    Rng rng(cfg.seed);
    std::vector<std::vector<double>> finals;
    for (int s = 0; s < cfg.n_starts; ++s) {
      const auto start = random_start(rng, cfg.game);
      std::vector<double> impacts;
      if (sp) {
        impacts = equilibrate_spotlight(cfg.game, *sp, start, tol, cfg.max_rounds)
                      .base.impacts.v;
      } else {
        impacts = equilibrate(cfg.game, start, tol, cfg.max_rounds).impacts.v;
      }
      finals.push_back(std::move(impacts));
    }
    double max_dist = 0.0;
    for (std::size_t a = 0; a < finals.size(); ++a)
      for (std::size_t b = a + 1; b < finals.size(); ++b)
        max_dist = std::max(max_dist, euclidean(finals[a], finals[b]));
    const bool pass = max_dist < cfg.eps;
    res.table.rows.push_back({name, format_double(max_dist), pass ? "1" : "0"});
    if (!pass)
      res.violations.push_back(
          {"uniqueness_violation",
           pubchoice::format("{}: max pairwise distance {}", name, max_dist)});
    return finals.front();
  };

  const auto base_impacts = run_scenario("baseline", nullptr);

  // Binary instances admit the root solver as an independent cross-check.
  if (cfg.game.n_types() == 2) {
    const auto eq = solve_equilibrium_root(BinaryGame::from_spec(cfg.game));
    const double d = euclidean(base_impacts, eq.impacts.v);
    res.details["root_solver_distance"] = d;
    if (d >= 1e-5)
      res.violations.push_back(
          {"cross_solver_disagreement",
           pubchoice::format("dynamics vs root solver distance {}", d)});
  }

  if (cfg.has_spotlight) {
    std::vector<std::size_t> venues = cfg.venues;
    if (venues.empty())
      for (std::size_t j = 1; j <= cfg.game.n_venues(); ++j) venues.push_back(j);
    for (std::size_t venue : venues) {
      const auto sp =
          solve_selection_scale(cfg.game, venue - 1, 1.0 / cfg.sp_ratio, cfg.sp_p);
      run_scenario(pubchoice::format("spotlight_venue_{}", venue), &sp);
    }
  }
  return res;
}

StudyResult run_cost_sweep(const ExperimentConfig& cfg) {
  StudyResult res;
  res.kind = "cost-sweep";
  res.table.columns = {"g", "venue", "impact"};

  std::vector<double> gs = cfg.g_values;
  std::sort(gs.begin(), gs.end());
  std::vector<std::vector<double>> impacts_per_g;
  for (double g : gs) {
    const auto spec = build_appendix_game(g, cfg.n_types, cfg.n_venues, cfg.game.budget);
    const auto eq = equilibrate(spec, default_initial(spec), cfg.eps, cfg.max_rounds);
    if (!eq.converged) {
      res.numeric_failure = true;
      res.violations.push_back(
          {"non_convergence", pubchoice::format("g = {} hit the round cap", g)});
    }
    impacts_per_g.push_back(eq.impacts.v);
    for (std::size_t j = 0; j < eq.impacts.size(); ++j)
      res.table.rows.push_back(
          {format_double(g), std::to_string(j + 1), format_double(eq.impacts[j])});
  }

  const std::size_t k = cfg.n_venues;
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    for (std::size_t j = 0; j + 1 < k; ++j) {
      if (!(impacts_per_g[gi][j] < impacts_per_g[gi][j + 1]))
        res.violations.push_back(
            {"impact_order_violation",
             pubchoice::format("g = {}: v_{} >= v_{}", gs[gi], j + 1, j + 2)});
    }
    if (gi == 0) continue;
    if (!(impacts_per_g[gi][0] < impacts_per_g[gi - 1][0]))
      res.violations.push_back(
          {"cost_sweep_violation",
           pubchoice::format("v_1 did not fall from g = {} to g = {}", gs[gi - 1], gs[gi])});
    for (std::size_t j = 1; j < k; ++j) {
      if (!(impacts_per_g[gi][j] > impacts_per_g[gi - 1][j]))
        res.violations.push_back(
            {"cost_sweep_violation",
             pubchoice::format("v_{} did not rise from g = {} to g = {}", j + 1, gs[gi - 1],
                         gs[gi])});
    }
  }
  return res;
}

StudyResult run_spotlight_threshold(const ExperimentConfig& cfg) {
  StudyResult res;
  res.kind = "spotlight-threshold";
  const double omega = 1.0 / cfg.sp_ratio;
  const double gamma = labeling_effect(omega, cfg.sp_p);
  const auto th = threshold_venue(cfg.game, omega, cfg.sp_p, cfg.eps, cfg.max_rounds);

  res.table.columns = {"scenario", "venue", "regular_impact", "overall_impact",
                       "baseline_impact"};
  const std::size_t k = cfg.game.n_venues();
  for (std::size_t j = 0; j < k; ++j)
    res.table.rows.push_back({"baseline", std::to_string(j + 1),
                              format_double(th.baseline[j]), format_double(th.baseline[j]),
                              format_double(th.baseline[j])});
  for (std::size_t sv = 0; sv < k; ++sv) {
    for (std::size_t j = 0; j < k; ++j) {
      double overall = th.impacts[sv][j];
      if (j == sv) overall *= (omega + gamma) / (1.0 + omega);
      res.table.rows.push_back({pubchoice::format("spotlight_venue_{}", sv + 1),
                                std::to_string(j + 1), format_double(th.impacts[sv][j]),
                                format_double(overall), format_double(th.baseline[j])});
    }
  }
  res.details = {{"j0", th.j0 + 1},
                 {"dichotomy_ok", th.dichotomy_ok},
                 {"empirical", th.empirical},
                 {"effect", th.effect},
                 {"gamma", gamma}};

  // Orderings from the many-type threshold experiment: the least competitive
  // venue raises venue 2 above the baseline, competitive venues lower every
  // regular impact below it.
  if (k >= 2 && !(th.impacts[0][1] > th.baseline[1]))
    res.violations.push_back(
        {"threshold_violation", "venue-1 spotlight did not raise venue 2 above baseline"});
  for (std::size_t sv = 1; sv < k; ++sv) {
    if (th.effect[sv] != -1)
      res.violations.push_back(
          {"threshold_violation",
           pubchoice::format("venue-{} spotlight did not lower all regular impacts", sv + 1)});
  }
  return res;
}

StudyResult run_spotlight_ratio_sweep(const ExperimentConfig& cfg) {
  StudyResult res;
  res.kind = "spotlight-ratio-sweep";
  res.table.columns = {"spot_venue", "ratio", "venue", "regular_impact", "gamma",
                       "gamma_gt_one"};

  std::vector<std::size_t> venues = cfg.venues;
  if (venues.empty())
    for (std::size_t j = 1; j <= cfg.game.n_venues(); ++j) venues.push_back(j);
  std::vector<double> ratios = cfg.ratios;
  std::sort(ratios.begin(), ratios.end());

  // impacts[spot venue][ratio] -> regular impacts; gamma<=1 runs are kept in
  // the table but excluded from the ordering assertions.
  std::map<std::size_t, std::map<double, std::vector<double>>> impacts;
  std::map<double, bool> usable;
  for (std::size_t venue : venues) {
    for (double ratio : ratios) {
      const double omega = 1.0 / ratio;
      const auto sp = solve_selection_scale(cfg.game, venue - 1, omega, cfg.sp_p);
      const auto eq = equilibrate_spotlight(cfg.game, sp, cfg.eps, cfg.max_rounds);
      impacts[venue][ratio] = eq.base.impacts.v;
      usable[ratio] = sp.gamma_gt_one;
      for (std::size_t j = 0; j < eq.base.impacts.size(); ++j)
        res.table.rows.push_back({std::to_string(venue), format_double(ratio),
                                  std::to_string(j + 1),
                                  format_double(eq.base.impacts[j]),
                                  format_double(sp.gamma), sp.gamma_gt_one ? "1" : "0"});
    }
  }

  std::vector<double> ordered;
  for (double r : ratios)
    if (usable[r]) ordered.push_back(r);

  // Lower ratio at a competitive venue presses other venues' impacts lower.
  auto gap = [&](std::size_t venue, double r_lo, double r_hi) {
    double total = 0.0;
    for (std::size_t j = 0; j < cfg.game.n_venues(); ++j) {
      if (j == venue - 1) continue;
      total += std::abs(impacts[venue][r_lo][j] - impacts[venue][r_hi][j]);
    }
    return total;
  };
  for (std::size_t venue : venues) {
    if (venue == 1) continue;
    for (std::size_t ri = 0; ri + 1 < ordered.size(); ++ri) {
      for (std::size_t j = 0; j < cfg.game.n_venues(); ++j) {
        if (j == venue - 1) continue;
        if (!(impacts[venue][ordered[ri]][j] < impacts[venue][ordered[ri + 1]][j]))
          res.violations.push_back(
              {"ratio_order_violation",
               pubchoice::format("spot venue {}, venue {}: impact at ratio {} not below ratio {}",
                           venue, j + 1, ordered[ri], ordered[ri + 1])});
      }
    }
  }
  if (std::ranges::count(venues, std::size_t{2}) && std::ranges::count(venues, std::size_t{3}) &&
      ordered.size() >= 2) {
    const double g2 = gap(2, ordered.front(), ordered.back());
    const double g3 = gap(3, ordered.front(), ordered.back());
    res.details["gap_venue_2"] = g2;
    res.details["gap_venue_3"] = g3;
    if (!(g3 > g2))
      res.violations.push_back(
          {"ratio_gap_violation", "venue-3 sweep spread not above venue-2 spread"});
  }
  return res;
}

StudyResult run_study(const ExperimentConfig& cfg) {
  StudyResult res;
  if (cfg.kind == "equilibrate")
    res = run_equilibrate(cfg);
  else if (cfg.kind == "binary-root")
    res = run_binary_root(cfg);
  else if (cfg.kind == "spotlight")
    res = run_spotlight(cfg);
  else if (cfg.kind == "convergence")
    res = run_convergence_study(cfg);
  else if (cfg.kind == "uniqueness")
    res = run_uniqueness_study(cfg);
  else if (cfg.kind == "cost-sweep")
    res = run_cost_sweep(cfg);
  else if (cfg.kind == "spotlight-threshold")
    res = run_spotlight_threshold(cfg);
  else if (cfg.kind == "spotlight-ratio-sweep")
    res = run_spotlight_ratio_sweep(cfg);
  else
    throw ConfigError(pubchoice::format("unknown experiment kind '{}'", cfg.kind));
  res.details["config"] = cfg.echo;
  res.details["seed"] = cfg.seed;
  return res;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(pubchoice::format("cannot open {} for writing", path.string()));
  out << content;
  if (!out) throw std::runtime_error(pubchoice::format("write failed for {}", path.string()));
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

struct Series {
  std::string label;
  std::vector<double> xs, ys;
};

std::string to_svg(const std::vector<Series>& series, const std::string& x_label,
                   const std::string& y_label) {
  static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series) {
    for (double x : s.xs) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
    for (double y : s.ys) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double w = 640, h = 480, ml = 60, mr = 150, mt = 20, mb = 50;
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (w - ml - mr); };
  auto py = [&](double y) { return h - mb - (y - y_lo) / (y_hi - y_lo) * (h - mt - mb); };

  std::string svg = pubchoice::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      w, h, w, h);
  svg += pubchoice::format(
      "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n"
      "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
      ml, h - mb, w - mr, h - mb, ml, mt, ml, h - mb);
  svg += pubchoice::format(
      "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n"
      "<text x=\"12\" y=\"{}\" font-size=\"12\" transform=\"rotate(-90 12 {})\">{}</text>\n",
      (ml + w - mr) / 2, h - 12, x_label, (mt + h - mb) / 2, (mt + h - mb) / 2, y_label);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 8];
    std::string points;
    for (std::size_t i = 0; i < series[s].xs.size(); ++i)
      points += pubchoice::format("{:.2f},{:.2f} ", px(series[s].xs[i]), py(series[s].ys[i]));
    svg += pubchoice::format("<polyline fill=\"none\" stroke=\"{}\" points=\"{}\"/>\n", color,
                       points);
    svg += pubchoice::format(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{}\">{}</text>\n", w - mr + 8,
        mt + 16.0 * static_cast<double>(s + 1), color, series[s].label);
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<Series> chart_series(const StudyResult& res) {
  // Figure-style studies only: group table rows into (x, y) polylines.
  std::map<std::string, Series> grouped;
  auto cell = [&](const std::vector<std::string>& row, std::size_t c) {
    return std::stod(row[c]);
  };
  if (res.kind == "cost-sweep") {
    for (const auto& row : res.table.rows) {
      auto& s = grouped["g=" + row[0]];
      s.label = "g=" + row[0];
      s.xs.push_back(cell(row, 1));
      s.ys.push_back(cell(row, 2));
    }
  } else if (res.kind == "spotlight-threshold") {
    for (const auto& row : res.table.rows) {
      auto& s = grouped[row[0]];
      s.label = row[0];
      s.xs.push_back(cell(row, 1));
      s.ys.push_back(cell(row, 2));
    }
  } else if (res.kind == "spotlight-ratio-sweep") {
    for (const auto& row : res.table.rows) {
      const std::string key = "v" + row[0] + " r=" + row[1];
      auto& s = grouped[key];
      s.label = key;
      s.xs.push_back(cell(row, 2));
      s.ys.push_back(cell(row, 3));
    }
  } else if (res.kind == "convergence") {
    auto& s = grouped["rounds"];
    s.label = "rounds histogram";
    for (const auto& [rounds, count] : res.details.at("histogram").items()) {
      s.xs.push_back(std::stod(rounds));
      s.ys.push_back(count.get<double>());
    }
  } else {
    throw ConfigError(
        pubchoice::format("svg output is not available for experiment kind '{}'", res.kind));
  }
  std::vector<Series> out;
  for (auto& [key, s] : grouped) out.push_back(std::move(s));
  return out;
}

}  // namespace

std::vector<std::filesystem::path> emit_results(const StudyResult& result,
                                                const std::string& format,
                                                const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  if (format == "csv") {
    const auto path = out_dir / (result.kind + ".csv");
    write_file(path, to_csv(result.table));
    written.push_back(path);
  } else if (format == "json") {
    json doc = {{"kind", result.kind},
                {"library_version", kLibraryVersion},
                {"rng", kRngId},
                {"config", result.details.contains("config") ? result.details.at("config")
                                                             : json(nullptr)},
                {"columns", result.table.columns},
                {"rows", result.table.rows},
                {"details", result.details},
                {"violations", violations_json(result.violations)}};
    const auto path = out_dir / (result.kind + ".json");
    write_file(path, doc.dump(2) + "\n");
    written.push_back(path);
  } else if (format == "svg") {
    const auto series = chart_series(result);
    const auto path = out_dir / (result.kind + ".svg");
    write_file(path, to_svg(series, "venue", "impact"));
    written.push_back(path);
  } else {
    throw ConfigError(pubchoice::format("unknown output format '{}'", format));
  }

  if (!result.violations.empty()) {
    const auto path = out_dir / (result.kind + ".violations.json");
    write_file(path, violations_json(result.violations).dump(2) + "\n");
    written.push_back(path);
  }
  return written;
}

}  // namespace pubchoice::experiments
