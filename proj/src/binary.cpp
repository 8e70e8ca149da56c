#include "pubchoice/binary.hpp"

#include <cmath>

namespace pubchoice {

BinaryGame BinaryGame::from_spec(const GameSpec& spec) {
  const auto norm = normalize_binary(spec);
  BinaryGame g;
  g.theta = norm.spec.thetas[1];
  g.mu_tilde = norm.mu_tilde;
  g.cost_low = spec.costs.row(0);
  g.cost_high = spec.costs.row(1);
  g.alpha = spec.alpha;
  g.beta = spec.beta;
  g.budget = spec.budget;
  g.scale = norm.scale;
  g.b.resize(g.n_venues());
  for (std::size_t j = 0; j < g.n_venues(); ++j) {
    g.b[j] = std::pow(g.cost_high[0] * g.cost_low[j] / (g.cost_low[0] * g.cost_high[j]),
                      1.0 / (1.0 - g.alpha));
  }
  return g;
}

GameSpec BinaryGame::to_spec() const {
  GameSpec spec;
  spec.thetas = {scale, scale * theta};
  spec.masses = {1.0 / (1.0 + mu_tilde), mu_tilde / (1.0 + mu_tilde)};
  spec.costs = Matrix::from_rows({cost_low, cost_high});
  spec.alpha = alpha;
  spec.beta = beta;
  spec.budget = budget;
  return spec;
}

double venue_impact_of_ratio(double x, std::size_t j, const BinaryGame& g) {
  if (x < 0.0) throw std::invalid_argument("negative action ratio");
  const double bxm = g.b[j] * x * g.mu_tilde;
  return (1.0 + bxm * g.theta) / (1.0 + bxm);
}

double characteristic(double x, const BinaryGame& g) {
  const double cost_exp = g.alpha / (g.alpha - 1.0);
  const double impact_exp = g.beta / (1.0 - g.alpha);
  const double c_ratio = g.cost_low[0] / g.cost_high[0];
  double f = 0.0;
  for (std::size_t l = 0; l < g.n_venues(); ++l) {
    const double v = venue_impact_of_ratio(x, l, g);
    f += std::pow(g.cost_high[l], cost_exp) * std::pow(v, impact_exp) *
         (x - c_ratio * std::pow(g.b[l], -g.alpha));
  }
  return f;
}

double characteristic_alt(double x, const BinaryGame& g) {
  const double cost_exp = g.alpha / (g.alpha - 1.0);
  const double impact_exp = g.beta / (1.0 - g.alpha);
  double s_high = 0.0, s_low = 0.0;
  for (std::size_t l = 0; l < g.n_venues(); ++l) {
    const double vpow = std::pow(venue_impact_of_ratio(x, l, g), impact_exp);
    s_high += std::pow(g.cost_high[l], cost_exp) * vpow;
    s_low += std::pow(g.cost_low[l], cost_exp) * vpow;
  }
  return x * s_high -
         std::pow(g.cost_high[0] / g.cost_low[0], 1.0 / (g.alpha - 1.0)) * s_low;
}

namespace {

double bisect_root(const BinaryGame& g, double lo, double hi, double tol) {
  double f_lo = characteristic(lo, g);
  for (int it = 0; it < 200 && hi - lo > tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = characteristic(mid, g);
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BinaryEquilibrium solve_equilibrium_root(const BinaryGame& g, double tol) {
  BinaryEquilibrium eq;
  const Matrix costs = Matrix::from_rows({g.cost_low, g.cost_high});
  eq.assumptions_ok = check_mcr(costs).holds && check_noncompetitive_first(costs);

  // f(0) < 0 always; double the upper end until f turns positive.
  double hi = 1.0;
  int doublings = 0;
  while (characteristic(hi, g) <= 0.0) {
    hi *= 2.0;
    if (++doublings > 64)
      throw std::runtime_error("characteristic bracket failure: f never positive");
  }

  if (eq.assumptions_ok) {
    eq.x = bisect_root(g, 0.0, hi, tol);
  } else {
    // Without convexity the root may not be unique; report every bracketed
    // sign change on a dense grid and take the first as the representative.
    const int grid = 4000;
    double prev_x = 0.0, prev_f = characteristic(0.0, g);
    for (int s = 1; s <= grid; ++s) {
      const double x = hi * s / grid;
      const double f = characteristic(x, g);
      if ((prev_f <= 0.0) != (f <= 0.0))
        eq.sign_changes.push_back(bisect_root(g, prev_x, x, tol));
      prev_x = x;
      prev_f = f;
    }
    if (eq.sign_changes.empty())
      throw std::runtime_error("characteristic bracket failure: no sign change found");
    eq.x = eq.sign_changes.front();
  }

  VenueImpacts impacts(g.n_venues(), 0.0);
  for (std::size_t j = 0; j < g.n_venues(); ++j)
    impacts[j] = g.scale * venue_impact_of_ratio(eq.x, j, g);
  eq.actions = best_response_all(impacts, g.to_spec());
  eq.impacts = std::move(impacts);
  return eq;
}

Direction sign_predicts_direction(double x, const BinaryGame& g, double tol) {
  const double f = characteristic(x, g);
  if (std::abs(f) <= tol) return Direction::fixed;
  return f < 0.0 ? Direction::increase : Direction::decrease;
}

BinaryGame scale_population(const BinaryGame& g, double m_high, double m_low) {
  if (!(m_high > 0.0 && m_low > 0.0))
    throw std::invalid_argument("population scale factors must be positive");
  BinaryGame out = g;
  out.mu_tilde = g.mu_tilde * (m_high / m_low);
  return out;
}

}  // namespace pubchoice
