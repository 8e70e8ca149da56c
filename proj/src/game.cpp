#include "pubchoice/game.hpp"

#include <cmath>
#include "pubchoice/format.hpp"

namespace pubchoice {

ValidationReport validate_game(const GameSpec& spec) {
  ValidationReport report;
  auto add = [&](std::string code, std::string detail) {
    report.violations.push_back({std::move(code), std::move(detail)});
  };

  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    add("alpha_out_of_range", pubchoice::format("alpha out of (0,1): {}", spec.alpha));
  if (!(spec.beta > 1.0))
    add("beta_out_of_range", pubchoice::format("beta must exceed 1: {}", spec.beta));
  if (!(spec.budget > 0.0))
    add("non_positive_budget", pubchoice::format("budget must be positive: {}", spec.budget));

  const std::size_t n = spec.thetas.size();
  if (spec.masses.size() != n)
    add("shape_mismatch", "masses length differs from thetas length");
  if (spec.costs.rows != n)
    add("shape_mismatch", "cost matrix row count differs from type count");
  if (spec.costs.cols == 0) add("shape_mismatch", "cost matrix has no venues");

  for (std::size_t i = 0; i < n; ++i) {
    if (!(spec.thetas[i] > 0.0))
      add("non_positive_theta", pubchoice::format("theta[{}] = {}", i, spec.thetas[i]));
    if (i + 1 < n && !(spec.thetas[i] < spec.thetas[i + 1]))
      add("theta_not_increasing",
          pubchoice::format("theta[{}] = {} >= theta[{}] = {}", i, spec.thetas[i], i + 1,
                      spec.thetas[i + 1]));
  }
  for (std::size_t i = 0; i < spec.masses.size(); ++i) {
    if (!(spec.masses[i] > 0.0))
      add("non_positive_mass", pubchoice::format("mass[{}] = {}", i, spec.masses[i]));
  }
  for (std::size_t i = 0; i < spec.costs.rows; ++i) {
    for (std::size_t j = 0; j < spec.costs.cols; ++j) {
      if (!(spec.costs(i, j) > 0.0))
        add("non_positive_cost", pubchoice::format("cost[{}][{}] = {}", i, j, spec.costs(i, j)));
      if (j + 1 < spec.costs.cols && spec.costs(i, j) > spec.costs(i, j + 1))
        add("cost_not_monotone_in_venue",
            pubchoice::format("cost[{}][{}] = {} > cost[{}][{}] = {}", i, j, spec.costs(i, j), i,
                        j + 1, spec.costs(i, j + 1)));
    }
  }
  return report;
}

McrResult check_mcr(const Matrix& costs) {
  McrResult res;
  for (std::size_t i = 0; i < costs.rows; ++i) {
    for (std::size_t ip = i + 1; ip < costs.rows; ++ip) {
      for (std::size_t j = 0; j < costs.cols; ++j) {
        for (std::size_t jp = j + 1; jp < costs.cols; ++jp) {
          // Cross-multiplied form of c(i,j)/c(ip,j) < c(i,jp)/c(ip,jp).
          if (!(costs(i, j) * costs(ip, jp) < costs(i, jp) * costs(ip, j))) {
            res.holds = false;
            res.witness = {i, ip, j, jp};
            return res;
          }
        }
      }
    }
  }
  return res;
}

bool check_noncompetitive_first(const Matrix& costs, double tol) {
  double lo = costs(0, 0), hi = costs(0, 0);
  for (std::size_t i = 1; i < costs.rows; ++i) {
    lo = std::min(lo, costs(i, 0));
    hi = std::max(hi, costs(i, 0));
  }
  return hi - lo <= tol;
}

bool is_rank_one_cost(const Matrix& costs, double tol) {
  for (std::size_t i = 0; i < costs.rows; ++i) {
    for (std::size_t ip = i + 1; ip < costs.rows; ++ip) {
      for (std::size_t j = 0; j < costs.cols; ++j) {
        for (std::size_t jp = j + 1; jp < costs.cols; ++jp) {
          const double lhs = costs(i, j) * costs(ip, jp);
          const double rhs = costs(i, jp) * costs(ip, j);
          if (std::abs(lhs - rhs) > tol * std::max(std::abs(lhs), std::abs(rhs)))
            return false;
        }
      }
    }
  }
  return true;
}

BinaryNormalization normalize_binary(const GameSpec& spec) {
  if (spec.n_types() != 2)
    throw std::invalid_argument("normalize_binary requires exactly two types");
  BinaryNormalization out;
  out.scale = spec.thetas[0];
  out.mu_tilde = spec.masses[1] / spec.masses[0];
  out.spec = spec;
  out.spec.thetas = {1.0, spec.thetas[1] / spec.thetas[0]};
  return out;
}

}  // namespace pubchoice
