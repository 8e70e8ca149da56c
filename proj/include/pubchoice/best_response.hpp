#pragma once

#include <span>

#include "pubchoice/game.hpp"

namespace pubchoice {

struct BestResponseRow {
  std::vector<double> actions;
  double multiplier = 0.0;  // Lagrange multiplier of the budget constraint
};

/// Closed-form solution of max a^alpha . v^beta  s.t.  a . c <= B:
///   a_j = B * c_j^{1/(alpha-1)} v_j^{beta/(1-alpha)} /
///         sum_l c_l^{alpha/(alpha-1)} v_l^{beta/(1-alpha)}
/// The budget always binds (marginal utility is strictly positive).
BestResponseRow best_response(const VenueImpacts& impacts, std::span<const double> cost_row,
                              double alpha, double beta, double budget);

/// Stacks the closed-form best response of every type.
ActionProfile best_response_all(const VenueImpacts& impacts, const GameSpec& spec);

/// u = (sum_j a_j^alpha v_j^beta)^{1/beta}
double utility(std::span<const double> action_row, const VenueImpacts& impacts, double alpha,
               double beta);

}  // namespace pubchoice
