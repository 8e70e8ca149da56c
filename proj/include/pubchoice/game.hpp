#pragma once

#include <array>
#include <string>

#include "pubchoice/types.hpp"

namespace pubchoice {

/// A publication choice game: researcher types with masses, a per-type/per-venue
/// cost matrix, utility exponents, and the common time budget.
///
/// Types are indexed in strictly increasing impact order (thetas[0] is the
/// lowest type). Venues are indexed in increasing competitiveness order, so
/// costs are non-decreasing along each row.
struct GameSpec {
  std::vector<double> thetas;
  std::vector<double> masses;
  Matrix costs;
  double alpha = 0.2;
  double beta = 2.0;
  double budget = 1.0;

  std::size_t n_types() const { return thetas.size(); }
  std::size_t n_venues() const { return costs.cols; }
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks exponent ranges, positivity, type ordering, shape agreement, and
/// venue-cost monotonicity. Violations are returned as data, never thrown.
ValidationReport validate_game(const GameSpec& spec);

struct McrResult {
  bool holds = true;
  // First violating quadruple (i, i', j, j'), zero-based; meaningful iff !holds.
  std::array<std::size_t, 4> witness{0, 0, 0, 0};
};

/// Monotone Cost Ratio: c(i,j)/c(i',j) < c(i,j')/c(i',j') for all i<i', j<j'.
McrResult check_mcr(const Matrix& costs);

/// True iff the first venue's cost column is type-independent within tol.
bool check_noncompetitive_first(const Matrix& costs, double tol = 1e-9);

/// True iff all cross ratios c(i,j)*c(i',j') = c(i,j')*c(i',j) hold within
/// relative tolerance, i.e. the matrix is multiplicatively separable.
bool is_rank_one_cost(const Matrix& costs, double tol = 1e-9);

struct BinaryNormalization {
  GameSpec spec;      // thetas rescaled to (1, theta_high/theta_low)
  double scale = 1.0; // the low type's impact, for rescaling outputs
  double mu_tilde = 1.0;
};

/// Rescales a two-type game so the low type has impact 1. Throws
/// std::invalid_argument when the game does not have exactly two types.
BinaryNormalization normalize_binary(const GameSpec& spec);

}  // namespace pubchoice
