#pragma once

#include "pubchoice/best_response.hpp"

namespace pubchoice {

struct EquilibriumResult {
  VenueImpacts impacts;
  ActionProfile actions;  // exact best responses to `impacts`
  int rounds = 0;
  double residual = 0.0;  // Euclidean gap between impacts and their update
  bool converged = false;
  std::vector<std::vector<double>> trace;  // per-round impacts when recorded
};

/// v_j = sum_i a(i,j) mu_i theta_i / sum_i a(i,j) mu_i. Throws on an empty
/// venue (zero weighted column sum).
VenueImpacts update_impacts(const ActionProfile& actions, const GameSpec& spec);

/// One round of simultaneous best response followed by the impact update.
/// Maps [theta_1, theta_n]^k into itself.
VenueImpacts step(const VenueImpacts& impacts, const GameSpec& spec);

/// Uniform impacts at the population mean type, the default starting point.
VenueImpacts default_initial(const GameSpec& spec);

/// Iterated best-response dynamics with the epsilon-Nash stopping rule.
/// Round exhaustion yields converged=false, never an exception.
EquilibriumResult equilibrate(const GameSpec& spec, const VenueImpacts& initial, double eps,
                              int max_rounds = 1000, bool record_trace = false);

/// True iff the consistency residual is below eps and every row attains the
/// closed-form best-response utility within 1e-9 relative.
bool check_eps_nash(const ActionProfile& actions, const VenueImpacts& impacts,
                    const GameSpec& spec, double eps);

}  // namespace pubchoice
