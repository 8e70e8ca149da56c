#pragma once

#include "pubchoice/dynamics.hpp"

namespace pubchoice {

/// Two-type game in normalized form (low type impact 1, high type theta > 1),
/// together with the venue coefficients b_j entering the characteristic
/// function. Type ordering follows GameSpec: row 0 low, row 1 high.
struct BinaryGame {
  double theta = 2.0;     // normalized high-type impact
  double mu_tilde = 1.0;  // mu_high / mu_low
  std::vector<double> cost_low;
  std::vector<double> cost_high;
  double alpha = 0.2;
  double beta = 2.0;
  double budget = 1.0;
  double scale = 1.0;  // theta_low of the original game, for rescaling impacts

  // b_j = (c_H1 c_Lj / (c_L1 c_Hj))^{1/(1-alpha)}; b_1 = 1, and under MCR
  // with a non-competitive first venue b_j strictly increases in j.
  std::vector<double> b;

  std::size_t n_venues() const { return cost_low.size(); }

  static BinaryGame from_spec(const GameSpec& spec);
  GameSpec to_spec() const;  // original (unnormalized) two-type game
};

/// v_j(x) = (1 + b_j x theta mu_tilde) / (1 + b_j x mu_tilde), the normalized
/// impact of venue j when the first-venue action ratio a_H1/a_L1 equals x.
double venue_impact_of_ratio(double x, std::size_t j, const BinaryGame& g);

/// f(x) = sum_l c_Hl^{alpha/(alpha-1)} v_l(x)^{beta/(1-alpha)}
///               (x - (c_L1/c_H1) b_l^{-alpha}).
/// Its sign gives the direction of the impact drift; its unique root under
/// the MCR and non-competitive-venue assumptions is the equilibrium ratio.
double characteristic(double x, const BinaryGame& g);

/// Equivalent form  x * S_H(x) - (c_H1/c_L1)^{1/(alpha-1)} * S_L(x) with
/// S_i = sum_l c_il^{alpha/(alpha-1)} v_l(x)^{beta/(1-alpha)}. Algebraically
/// identical to characteristic(); kept for cross-validation.
double characteristic_alt(double x, const BinaryGame& g);

struct BinaryEquilibrium {
  double x = 0.0;        // equilibrium first-venue action ratio
  VenueImpacts impacts;  // rescaled to original impact units
  ActionProfile actions;
  bool assumptions_ok = true;       // MCR + non-competitive venue 1
  std::vector<double> sign_changes; // all bracketed roots when assumptions fail
};

/// Finds the root of the characteristic function by bracketing bisection.
/// Throws std::runtime_error on bracket failure (f never turns positive).
BinaryEquilibrium solve_equilibrium_root(const BinaryGame& g, double tol = 1e-12);

enum class Direction { increase, decrease, fixed };

/// Predicted movement of every venue impact after one best-response round,
/// from the sign of the characteristic function at the current ratio.
Direction sign_predicts_direction(double x, const BinaryGame& g, double tol = 1e-12);

/// Scales the two population densities; only the ratio mu_tilde changes.
BinaryGame scale_population(const BinaryGame& g, double m_high, double m_low);

}  // namespace pubchoice
