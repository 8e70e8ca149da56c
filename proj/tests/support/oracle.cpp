#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace pubchoice::testing {

namespace {

double objective(const std::vector<double>& a, const VenueImpacts& v, double alpha,
                 double beta) {
  double u = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    u += std::pow(a[j], alpha) * std::pow(v[j], beta);
  return u;
}

}  // namespace

std::vector<double> oracle_exchange(const VenueImpacts& impacts,
                                    std::span<const double> cost_row, double alpha,
                                    double beta, double budget, int passes) {
  const std::size_t k = cost_row.size();
  // Start from the equal-spend allocation.
  std::vector<double> a(k);
  for (std::size_t j = 0; j < k; ++j) a[j] = budget / (static_cast<double>(k) * cost_row[j]);

  for (int pass = 0; pass < passes; ++pass) {
    double moved = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) {
        // Reallocate the pooled spend m between venues j and l; the
        // restriction u(t) with a_j = t/c_j, a_l = (m-t)/c_l is concave.
        const double m = a[j] * cost_row[j] + a[l] * cost_row[l];
        if (m <= 0.0) continue;
        const double wj = std::pow(impacts[j], beta);
        const double wl = std::pow(impacts[l], beta);
        auto u = [&](double t) {
          return wj * std::pow(t / cost_row[j], alpha) +
                 wl * std::pow((m - t) / cost_row[l], alpha);
        };
        double lo = 0.0, hi = m;
        for (int it = 0; it < 200; ++it) {
          const double t1 = lo + (hi - lo) / 3.0;
          const double t2 = hi - (hi - lo) / 3.0;
          if (u(t1) < u(t2))
            lo = t1;
          else
            hi = t2;
        }
        const double t = 0.5 * (lo + hi);
        moved = std::max(moved, std::abs(a[j] - t / cost_row[j]));
        a[j] = t / cost_row[j];
        a[l] = (m - t) / cost_row[l];
      }
    }
    if (moved < 1e-14 * budget) break;
  }
  return a;
}

std::vector<double> oracle_ascent(const VenueImpacts& impacts,
                                  std::span<const double> cost_row, double alpha,
                                  double beta, double budget, int iterations) {
  // Exponentiated-gradient ascent on the spend simplex s_j = a_j c_j,
  // sum s_j = budget. The marginal utility per unit of spend diverges as a
  // venue's spend goes to zero (alpha < 1), so the optimum is interior and is
  // characterized by equal marginal utilities. We therefore use the KKT
  // spread max_j g_j / min_j g_j - 1 as the merit function: it is zero
  // exactly at the optimum and strictly decreases for small enough steps.
  const std::size_t k = cost_row.size();
  std::vector<double> s(k, budget / static_cast<double>(k));

  auto gradients = [&](const std::vector<double>& spend) {
    std::vector<double> g(k);
    for (std::size_t j = 0; j < k; ++j)
      g[j] = alpha * std::pow(spend[j] / cost_row[j], alpha - 1.0) *
             std::pow(impacts[j], beta) / cost_row[j];
    return g;
  };
  auto spread = [&](const std::vector<double>& g) {
    const auto [mn, mx] = std::minmax_element(g.begin(), g.end());
    return *mx / *mn - 1.0;
  };

  auto g = gradients(s);
  double merit = spread(g);
  double eta = 0.25;
  for (int it = 0; it < iterations && merit > 1e-13; ++it) {
    const double gmax = *std::max_element(g.begin(), g.end());
    std::vector<double> cand(k);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      cand[j] = s[j] * std::exp(eta * g[j] / gmax);
      total += cand[j];
    }
    for (double& c : cand) c *= budget / total;
    const auto g_new = gradients(cand);
    const double merit_new = spread(g_new);
    if (merit_new < merit) {
      s = std::move(cand);
      g = g_new;
      merit = merit_new;
      eta = std::min(eta * 1.5, 4.0);
    } else {
      eta *= 0.5;
    }
  }

  std::vector<double> a(k);
  for (std::size_t j = 0; j < k; ++j) a[j] = s[j] / cost_row[j];
  return a;
}

GameSpec random_game(experiments::Rng& rng, std::size_t n_types, std::size_t n_venues) {
  GameSpec spec;
  // alpha stays below 0.55: scans show the characteristic function can gain
  // extra zero crossings (multiple equilibria) from roughly alpha = 0.6, and
  // the uniqueness-dependent suites are only meaningful below that. beta > 1
  // is part of the model's domain.
  spec.alpha = rng.uniform(0.05, 0.55);
  spec.beta = rng.uniform(1.05, 4.0);
  spec.budget = rng.uniform(1.0, 50.0);

  double theta = rng.uniform(0.2, 2.0);
  double mass_sum = 0.0;
  for (std::size_t i = 0; i < n_types; ++i) {
    spec.thetas.push_back(theta);
    theta += rng.uniform(0.2, 5.0);
    spec.masses.push_back(rng.uniform(0.05, 1.0));
    mass_sum += spec.masses.back();
  }
  for (double& m : spec.masses) m /= mass_sum;

  // c(i,j) = exp(s_i t_j + u_j) with s decreasing, t and u increasing from 0:
  // strict MCR, non-decreasing rows, and a constant first column by design.
  std::vector<double> s(n_types), t(n_venues, 0.0), u(n_venues, 0.0);
  const double s_hi = rng.uniform(1.0, 2.0);
  const double s_lo = rng.uniform(0.05, 0.5);
  for (std::size_t i = 0; i < n_types; ++i) {
    const double frac =
        n_types > 1 ? static_cast<double>(i) / static_cast<double>(n_types - 1) : 0.0;
    s[i] = s_hi - (s_hi - s_lo) * frac;  // positive and strictly decreasing
  }
  for (std::size_t j = 1; j < n_venues; ++j) {
    t[j] = t[j - 1] + rng.uniform(0.1, 1.0);
    u[j] = u[j - 1] + rng.uniform(0.1, 1.0);
  }
  spec.costs = Matrix(n_types, n_venues);
  for (std::size_t i = 0; i < n_types; ++i)
    for (std::size_t j = 0; j < n_venues; ++j)
      spec.costs(i, j) = std::exp(s[i] * t[j] + u[j]);
  return spec;
}

}  // namespace pubchoice::testing
