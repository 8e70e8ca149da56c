#include "pubchoice/spotlight.hpp"

#include <cmath>
#include <limits>

namespace pubchoice {

double labeling_effect(double omega, double p) {
  if (!(omega > 1.0)) throw std::invalid_argument("omega must exceed 1");
  if (!(p > 0.0)) throw std::invalid_argument("labeling exponent must be positive");
  return std::pow(std::log(omega), p);
}

namespace {

// Spotlight share of venue publications, spotlight / (regular + spotlight),
// for a given relative-cost column. Impacts cancel, so none appear here.
double spotlight_fraction(const GameSpec& spec, std::size_t venue,
                          const std::vector<double>& r, double gamma) {
  const double cost_exp = 1.0 / (spec.alpha - 1.0);
  const double gamma_pow = std::pow(gamma, spec.beta / (1.0 - spec.alpha));
  double regular = 0.0, spot = 0.0;
  for (std::size_t i = 0; i < spec.n_types(); ++i) {
    const double m = std::pow(spec.costs(i, venue), cost_exp) * spec.masses[i];
    regular += m;
    spot += m * std::pow(r[i], cost_exp) * gamma_pow;
  }
  return spot / (regular + spot);
}

std::vector<double> selection_rule(std::size_t n_types, double scale) {
  std::vector<double> r(n_types);
  for (std::size_t i = 0; i < n_types; ++i) {
    const double rank = static_cast<double>(n_types - i);  // N+1-i with 1-based i
    r[i] = scale * rank * rank;
  }
  return r;
}

}  // namespace

SpotlightSpec solve_selection_scale(const GameSpec& spec, std::size_t venue, double omega,
                                    double p) {
  if (venue >= spec.n_venues()) throw std::invalid_argument("spotlight venue out of range");
  SpotlightSpec sp;
  sp.venue = venue;
  sp.omega = omega;
  sp.p = p;
  sp.gamma = labeling_effect(omega, p);
  sp.gamma_gt_one = sp.gamma > 1.0;

  const double target = 1.0 / omega;
  auto fraction_at = [&](double scale) {
    return spotlight_fraction(spec, venue, selection_rule(spec.n_types(), scale), sp.gamma);
  };

  // The share is strictly decreasing in the scale; bracket by doubling/halving.
  double lo = 1.0, hi = 1.0;
  while (fraction_at(lo) < target) {
    lo *= 0.5;
    if (lo < 1e-300) throw std::runtime_error("spotlight fraction target unreachable");
  }
  while (fraction_at(hi) > target) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("spotlight fraction target unreachable");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (fraction_at(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  sp.selection_scale = 0.5 * (lo + hi);
  sp.r = selection_rule(spec.n_types(), sp.selection_scale);
  sp.r_floor_ok = sp.r.back() >= 1.0;
  return sp;
}

SpotlightSpec make_spotlight(std::size_t venue, double omega, double p,
                             std::vector<double> r) {
  SpotlightSpec sp;
  sp.venue = venue;
  sp.omega = omega;
  sp.p = p;
  sp.gamma = labeling_effect(omega, p);
  sp.gamma_gt_one = sp.gamma > 1.0;
  sp.r = std::move(r);
  sp.r_floor_ok = true;
  for (double ri : sp.r) sp.r_floor_ok = sp.r_floor_ok && ri >= 1.0;
  sp.selection_scale = sp.r.empty() ? 1.0 : sp.r.back();
  return sp;
}

SpotlightActions best_response_spotlight(const VenueImpacts& impacts, const GameSpec& spec,
                                         const SpotlightSpec& sp) {
  const std::size_t n = spec.n_types();
  const std::size_t k = spec.n_venues();
  const double cost_exp = 1.0 / (spec.alpha - 1.0);
  const double impact_exp = spec.beta / (1.0 - spec.alpha);
  const double gamma_pow = std::pow(sp.gamma, impact_exp);

  SpotlightActions out{ActionProfile{Matrix(n, k)}, ActionProfile{Matrix(n, k)}};
  for (std::size_t i = 0; i < n; ++i) {
    double denom = 0.0;
    std::vector<double> vpow(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (!(impacts[j] > 0.0)) throw std::invalid_argument("non-positive venue impact");
      vpow[j] = std::pow(impacts[j], impact_exp);
      double term = std::pow(spec.costs(i, j), spec.alpha * cost_exp) * vpow[j];
      if (j == sp.venue)
        term *= 1.0 + std::pow(sp.r[i], spec.alpha * cost_exp) * gamma_pow;
      denom += term;
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double a = spec.budget * std::pow(spec.costs(i, j), cost_exp) * vpow[j] / denom;
      out.regular.a(i, j) = a;
      if (j == sp.venue) out.spot.a(i, j) = a * std::pow(sp.r[i], cost_exp) * gamma_pow;
    }
  }
  return out;
}

double actual_spotlight_impact(std::span<const double> spot_col, const GameSpec& spec) {
  double weighted = 0.0, total = 0.0;
  for (std::size_t i = 0; i < spec.n_types(); ++i) {
    const double w = spot_col[i] * spec.masses[i];
    weighted += w * spec.thetas[i];
    total += w;
  }
  if (!(total > 0.0)) throw std::runtime_error("empty spotlight session");
  return weighted / total;
}

SpotlightEquilibrium equilibrate_spotlight(const GameSpec& spec, const SpotlightSpec& sp,
                                           const VenueImpacts& initial, double eps,
                                           int max_rounds) {
  SpotlightEquilibrium res;
  VenueImpacts v = initial;
  SpotlightActions acts;
  // Same damping scheme as equilibrate(): the stopping rule uses the
  // undamped residual, damping only tempers the applied step when the
  // residual stops contracting (e.g. two-cycles at high alpha).
  double damping = 1.0;
  double prev_residual = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= max_rounds; ++r) {
    acts = best_response_spotlight(v, spec, sp);
    VenueImpacts v_next = update_impacts(acts.regular, spec);
    double gap = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      gap += (v[j] - v_next[j]) * (v[j] - v_next[j]);
    res.base.residual = std::sqrt(gap);
    // Same convention as equilibrate(): rounds counts applied impact updates.
    res.base.rounds = res.base.residual < eps ? r - 1 : r;
    if (res.base.residual < eps) {
      res.base.converged = true;
      break;
    }
    if (res.base.residual > 0.7 * prev_residual) damping = std::max(0.5 * damping, 0.05);
    prev_residual = res.base.residual;
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] += damping * (v_next[j] - v[j]);
  }
  if (!res.base.converged) acts = best_response_spotlight(v, spec, sp);
  res.base.impacts = std::move(v);
  res.base.actions = std::move(acts.regular);
  res.spot_actions = std::move(acts.spot);

  res.overall_impacts = res.base.impacts.v;
  res.overall_impacts[sp.venue] *= (sp.omega + sp.gamma) / (1.0 + sp.omega);
  res.spot_actual_impact =
      actual_spotlight_impact(res.spot_actions.a.col(sp.venue), spec);
  return res;
}

SpotlightEquilibrium equilibrate_spotlight(const GameSpec& spec, const SpotlightSpec& sp,
                                           double eps, int max_rounds) {
  return equilibrate_spotlight(spec, sp, default_initial(spec), eps, max_rounds);
}

double characteristic_spotlight(double x, const BinaryGame& g, const SpotlightSpec& sp) {
  if (sp.r.size() != 2) throw std::invalid_argument("binary spotlight needs two cost ratios");
  const double cost_exp = g.alpha / (g.alpha - 1.0);
  const double impact_exp = g.beta / (1.0 - g.alpha);
  const double gamma_pow = std::pow(sp.gamma, impact_exp);
  double s_high = 0.0, s_low = 0.0;
  for (std::size_t l = 0; l < g.n_venues(); ++l) {
    const double vpow = std::pow(venue_impact_of_ratio(x, l, g), impact_exp);
    double phi_low = 1.0, phi_high = 1.0;
    if (l == sp.venue) {
      phi_low += std::pow(sp.r[0], cost_exp) * gamma_pow;
      phi_high += std::pow(sp.r[1], cost_exp) * gamma_pow;
    }
    s_high += std::pow(g.cost_high[l], cost_exp) * vpow * phi_high;
    s_low += std::pow(g.cost_low[l], cost_exp) * vpow * phi_low;
  }
  return x * s_high -
         std::pow(g.cost_high[0] / g.cost_low[0], 1.0 / (g.alpha - 1.0)) * s_low;
}

ThresholdResult threshold_venue(const GameSpec& spec, double omega, double p, double eps,
                                int max_rounds) {
  ThresholdResult res;
  res.empirical = spec.n_types() != 2;
  const auto baseline = equilibrate(spec, default_initial(spec), eps, max_rounds);
  res.baseline = baseline.impacts.v;

  const std::size_t k = spec.n_venues();
  res.effect.resize(k, 0);
  res.impacts.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto sp = solve_selection_scale(spec, j, omega, p);
    const auto eq = equilibrate_spotlight(spec, sp, eps, max_rounds);
    res.impacts[j] = eq.base.impacts.v;
    bool all_up = true, all_down = true;
    for (std::size_t l = 0; l < k; ++l) {
      all_up = all_up && res.impacts[j][l] > res.baseline[l];
      all_down = all_down && res.impacts[j][l] < res.baseline[l];
    }
    res.effect[j] = all_down ? -1 : (all_up ? 1 : 0);
  }

  res.j0 = k;
  for (std::size_t j = 0; j < k; ++j) {
    if (res.effect[j] == -1) {
      res.j0 = j;
      break;
    }
  }
  // Before the threshold a spotlight must not depress every venue; from the
  // threshold on it must depress all of them. Mixed effects below the
  // threshold are allowed: with more than two types the clean all-raise
  // pattern of the binary case can break on the least competitive venues.
  for (std::size_t j = 0; j < k; ++j) {
    if (j < res.j0 ? res.effect[j] == -1 : res.effect[j] != -1)
      res.dichotomy_ok = false;
  }
  return res;
}

}  // namespace pubchoice
