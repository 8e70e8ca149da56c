#pragma once

#include "pubchoice/binary.hpp"

namespace pubchoice {

/// Calibrated spotlight configuration for one venue. The relative cost
/// increases r_i = c^S_i / c_i follow the selection rule
/// r_i = selection_scale * (N+1-i)^2 (1-based type index i), so r decreases
/// in type and high types gain a relative advantage on spotlight acceptance.
struct SpotlightSpec {
  std::size_t venue = 0;  // zero-based spotlight venue index
  double omega = 2.0;     // inverse spotlight ratio, > 1
  double p = 1.77;        // labeling exponent
  double gamma = 1.0;     // (ln omega)^p, cached
  double selection_scale = 1.0;
  std::vector<double> r;  // per-type relative cost increase on the venue

  // Diagnostics, never clamped away: the model assumes gamma > 1 and r >= 1,
  // but extreme spotlight ratios can violate either.
  bool gamma_gt_one = true;
  bool r_floor_ok = true;
};

/// gamma = (ln omega)^p. Throws when omega <= 1.
double labeling_effect(double omega, double p);

/// Solves the selection scale a_j so that the spotlight share of venue j's
/// publications, spotlight / (regular + spotlight), equals 1/omega. The share
/// is impact-invariant and strictly decreasing in a_j; bisection applies.
SpotlightSpec solve_selection_scale(const GameSpec& spec, std::size_t venue, double omega,
                                    double p);

/// Builds a SpotlightSpec from an explicit relative-cost column, bypassing
/// the selection rule (used for degenerate and high-only configurations).
SpotlightSpec make_spotlight(std::size_t venue, double omega, double p, std::vector<double> r);

struct SpotlightActions {
  ActionProfile regular;
  ActionProfile spot;  // zero outside the spotlight venue's column
};

/// Joint best response over regular and spotlight publications; the budget
/// binds across both: sum_j a c + sum_j a^S c^S = B per type.
SpotlightActions best_response_spotlight(const VenueImpacts& impacts, const GameSpec& spec,
                                         const SpotlightSpec& sp);

struct SpotlightEquilibrium {
  EquilibriumResult base;            // regular-session impacts and actions
  ActionProfile spot_actions;
  std::vector<double> overall_impacts;  // (omega+gamma)/(1+omega) * v on the venue
  double spot_actual_impact = 0.0;      // weighted average type of spotlight authors
};

/// Best-response dynamics where regular impacts are computed from regular
/// actions only; spotlight actions never enter the impact update.
SpotlightEquilibrium equilibrate_spotlight(const GameSpec& spec, const SpotlightSpec& sp,
                                           double eps, int max_rounds = 1000);
SpotlightEquilibrium equilibrate_spotlight(const GameSpec& spec, const SpotlightSpec& sp,
                                           const VenueImpacts& initial, double eps,
                                           int max_rounds = 1000);

/// Weighted average type of spotlight publishers. Throws on an empty column.
double actual_spotlight_impact(std::span<const double> spot_col, const GameSpec& spec);

/// Characteristic function extended with the spotlight cost terms; its unique
/// root under the assumptions is the spotlight equilibrium ratio.
double characteristic_spotlight(double x, const BinaryGame& g, const SpotlightSpec& sp);

struct ThresholdResult {
  std::size_t j0 = 0;        // zero-based; n_venues when no venue decreases all
  bool dichotomy_ok = true;  // not-all-decrease strictly below j0, all-decrease at/above
  bool empirical = false;    // many-type runs are outside the theorem's scope
  std::vector<int> effect;   // per venue: +1 all increase, -1 all decrease, 0 mixed
  std::vector<double> baseline;
  std::vector<std::vector<double>> impacts;  // regular impacts per spotlighted venue
};

/// Switches each venue to spotlight labeling in turn and classifies the
/// effect on every regular equilibrium impact against the baseline.
ThresholdResult threshold_venue(const GameSpec& spec, double omega, double p,
                                double eps = 1e-9, int max_rounds = 1000);

}  // namespace pubchoice
