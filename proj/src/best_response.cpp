#include "pubchoice/best_response.hpp"

#include <cmath>

namespace pubchoice {

BestResponseRow best_response(const VenueImpacts& impacts, std::span<const double> cost_row,
                              double alpha, double beta, double budget) {
  const std::size_t k = impacts.size();
  if (cost_row.size() != k) throw std::invalid_argument("cost row / impacts length mismatch");

  const double cost_exp = 1.0 / (alpha - 1.0);
  const double impact_exp = beta / (1.0 - alpha);

  double denom = 0.0;
  std::vector<double> numer(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!(impacts[j] > 0.0)) throw std::invalid_argument("non-positive venue impact");
    if (!(cost_row[j] > 0.0)) throw std::invalid_argument("non-positive cost");
    const double vpow = std::pow(impacts[j], impact_exp);
    numer[j] = std::pow(cost_row[j], cost_exp) * vpow;
    denom += std::pow(cost_row[j], alpha * cost_exp) * vpow;
  }

  BestResponseRow row;
  row.actions.resize(k);
  for (std::size_t j = 0; j < k; ++j) row.actions[j] = budget * numer[j] / denom;
  row.multiplier = alpha * std::pow(budget / denom, alpha - 1.0);
  return row;
}

ActionProfile best_response_all(const VenueImpacts& impacts, const GameSpec& spec) {
  ActionProfile profile{Matrix(spec.n_types(), spec.n_venues())};
  for (std::size_t i = 0; i < spec.n_types(); ++i) {
    const auto cost_row = spec.costs.row(i);
    const auto br = best_response(impacts, cost_row, spec.alpha, spec.beta, spec.budget);
    for (std::size_t j = 0; j < spec.n_venues(); ++j) profile.a(i, j) = br.actions[j];
  }
  return profile;
}

double utility(std::span<const double> action_row, const VenueImpacts& impacts, double alpha,
               double beta) {
  if (action_row.size() != impacts.size())
    throw std::invalid_argument("action row / impacts length mismatch");
  double inner = 0.0;
  for (std::size_t j = 0; j < action_row.size(); ++j) {
    if (action_row[j] < 0.0) throw std::invalid_argument("negative action");
    inner += std::pow(action_row[j], alpha) * std::pow(impacts[j], beta);
  }
  return std::pow(inner, 1.0 / beta);
}

}  // namespace pubchoice
