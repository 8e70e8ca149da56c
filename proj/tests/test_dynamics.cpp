#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pubchoice/binary.hpp"
#include "pubchoice/experiments.hpp"
#include "support/oracle.hpp"

using namespace pubchoice;
namespace pt = pubchoice::testing;

namespace {

GameSpec counterexample_game() {
  // Two types (1, 20) with masses (2/3, 1/3), budget 40, low-type cost row
  // (1, 40), high-type cost row (1, 15).
  GameSpec spec;
  spec.thetas = {1.0, 20.0};
  spec.masses = {2.0 / 3.0, 1.0 / 3.0};
  spec.costs = Matrix::from_rows({{1.0, 40.0}, {1.0, 15.0}});
  spec.alpha = 0.2;
  spec.beta = 2.0;
  spec.budget = 40.0;
  return spec;
}

GameSpec single_type_game() {
  GameSpec spec;
  spec.thetas = {5.0};
  spec.masses = {1.0};
  spec.costs = Matrix::from_rows({{1.0, 2.0, 3.0}});
  spec.budget = 10.0;
  return spec;
}

GameSpec rank_one_game(experiments::Rng& rng, std::size_t n, std::size_t k) {
  GameSpec spec;
  double theta = rng.uniform(0.5, 2.0);
  double mass_sum = 0.0;
  std::vector<double> chat(n);
  std::vector<double> d(k);
  for (std::size_t i = 0; i < n; ++i) {
    spec.thetas.push_back(theta);
    theta += rng.uniform(0.5, 3.0);
    spec.masses.push_back(rng.uniform(0.1, 1.0));
    mass_sum += spec.masses.back();
    chat[i] = rng.uniform(0.5, 3.0);
  }
  for (double& m : spec.masses) m /= mass_sum;
  d[0] = rng.uniform(0.5, 2.0);
  for (std::size_t j = 1; j < k; ++j) d[j] = d[j - 1] * rng.uniform(1.0, 3.0);
  spec.costs = Matrix(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) spec.costs(i, j) = chat[i] * d[j];
  spec.budget = rng.uniform(1.0, 20.0);
  return spec;
}

}  // namespace

TEST_CASE("update_impacts is the mass-weighted mean type") {
  const auto single = single_type_game();
  const auto v = update_impacts(ActionProfile{Matrix(1, 3, 2.0)}, single);
  for (std::size_t j = 0; j < 3; ++j) CHECK(v[j] == doctest::Approx(5.0));

  GameSpec two;
  two.thetas = {1.0, 3.0};
  two.masses = {0.5, 0.5};
  two.costs = Matrix(2, 1, 1.0);
  CHECK(update_impacts(ActionProfile{Matrix::from_rows({{2.0}, {2.0}})}, two)[0] ==
        doctest::Approx(2.0));
  CHECK(update_impacts(ActionProfile{Matrix::from_rows({{1.0}, {3.0}})}, two)[0] ==
        doctest::Approx(2.5));
  CHECK_THROWS_WITH(update_impacts(ActionProfile{Matrix(2, 1, 0.0)}, two), "empty venue");
}

TEST_CASE("step maps a single type to its own impact") {
  const auto spec = single_type_game();
  const auto v = step(VenueImpacts({1.0, 9.0, 2.0}), spec);
  for (std::size_t j = 0; j < 3; ++j) CHECK(v[j] == doctest::Approx(5.0));
}

TEST_CASE("rank-one costs equalize impacts after one step") {
  experiments::Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto spec = rank_one_game(rng, 3, 3);
    VenueImpacts v(3, 0.0);
    for (std::size_t j = 0; j < 3; ++j)
      v[j] = rng.uniform(spec.thetas.front(), spec.thetas.back());
    const auto next = step(v, spec);
    CHECK(std::abs(next[0] - next[1]) <= 1e-8 * next[0]);
    CHECK(std::abs(next[0] - next[2]) <= 1e-8 * next[0]);
  }
}

TEST_CASE("step stays inside the type range") {
  const auto spec = experiments::build_appendix_game(0.6);
  experiments::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    VenueImpacts v(3, 0.0);
    for (std::size_t j = 0; j < 3; ++j) v[j] = rng.uniform(1.0, 25.0);
    const auto next = step(v, spec);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(next[j] >= 1.0);
      CHECK(next[j] <= 25.0);
    }
  }
}

TEST_CASE("impacts rise with the venue index after one step under MCR") {
  experiments::Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto spec = pt::random_game(rng, 3, 4);
    VenueImpacts v(4, 0.0);
    for (std::size_t j = 0; j < 4; ++j)
      v[j] = rng.uniform(spec.thetas.front(), spec.thetas.back());
    const auto next = step(v, spec);
    for (std::size_t j = 0; j + 1 < 4; ++j) CHECK(next[j] < next[j + 1]);
  }
}

TEST_CASE("single type equilibrates immediately") {
  const auto spec = single_type_game();
  const auto eq = equilibrate(spec, VenueImpacts({4.0, 5.0, 6.0}), 1e-9, 10);
  CHECK(eq.converged);
  CHECK(eq.rounds <= 2);
  for (std::size_t j = 0; j < 3; ++j) CHECK(eq.impacts[j] == doctest::Approx(5.0));
}

TEST_CASE("all starts converge quickly on the five-type benchmark") {
  const auto spec = experiments::build_appendix_game(0.6);
  experiments::Rng rng(42);
  for (int t = 0; t < 10; ++t) {
    VenueImpacts v(3, 0.0);
    for (std::size_t j = 0; j < 3; ++j) v[j] = rng.uniform(1.0, 25.0);
    const auto eq = equilibrate(spec, v, 1e-5, 1000);
    CHECK(eq.converged);
    CHECK(eq.rounds <= 7);
  }
}

TEST_CASE("dynamics agree with the characteristic-function root solver") {
  const auto spec = counterexample_game();
  const auto eq = equilibrate(spec, default_initial(spec), 1e-9, 1000);
  const auto root = solve_equilibrium_root(BinaryGame::from_spec(spec));
  REQUIRE(eq.converged);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(std::abs(eq.impacts[j] - root.impacts[j]) <= 1e-5);
}

TEST_CASE("low types out-publish high types on the counterexample") {
  const auto spec = counterexample_game();
  const auto eq = equilibrate(spec, default_initial(spec), 1e-9, 1000);
  REQUIRE(eq.converged);
  const double low = eq.actions.a(0, 0) + eq.actions.a(0, 1);
  const double high = eq.actions.a(1, 0) + eq.actions.a(1, 1);
  CHECK(low > high);
}

TEST_CASE("check_eps_nash semantics") {
  const auto spec = counterexample_game();
  const auto eq = equilibrate(spec, default_initial(spec), 1e-6, 1000);
  REQUIRE(eq.converged);
  CHECK(check_eps_nash(eq.actions, eq.impacts, spec, 1e-6));

  ActionProfile perturbed = eq.actions;
  perturbed.a(0, 0) *= 1.1;
  CHECK_FALSE(check_eps_nash(perturbed, eq.impacts, spec, 1.0));

  // Exact best responses to far-from-fixed-point impacts fail on the
  // consistency clause.
  const VenueImpacts far({1.01, 19.9});
  const auto acts = best_response_all(far, spec);
  CHECK_FALSE(check_eps_nash(acts, far, spec, 1e-6));
}

TEST_CASE("rank-one equilibria match the aggregate closed form") {
  experiments::Rng rng(37);
  for (int t = 0; t < 50; ++t) {
    const auto spec = rank_one_game(rng, 3, 3);
    const auto eq = equilibrate(spec, default_initial(spec), 1e-12, 1000);
    REQUIRE(eq.converged);
    double weighted = 0.0, total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double w = spec.masses[i] / spec.costs(i, 0);
      weighted += w * spec.thetas[i];
      total += w;
    }
    const double expected = weighted / total;
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(eq.impacts[j] - eq.impacts[0]) <= 1e-8 * eq.impacts[0]);
      CHECK(eq.impacts[j] == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("uniform density scaling leaves equilibria unchanged") {
  experiments::Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto spec = pt::random_game(rng, 3, 3);
    GameSpec scaled = spec;
    const double m = rng.uniform(0.1, 10.0);
    for (double& mu : scaled.masses) mu *= m;
    const auto start = default_initial(spec);
    const auto a = equilibrate(spec, start, 1e-10, 1000);
    const auto b = equilibrate(scaled, start, 1e-10, 1000);
    REQUIRE(a.converged);
    for (std::size_t j = 0; j < 3; ++j) CHECK(b.impacts[j] == doctest::Approx(a.impacts[j]));
  }
}

TEST_CASE("uniform cost scaling fixes impacts and rescales actions") {
  experiments::Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const auto spec = pt::random_game(rng, 3, 3);
    GameSpec scaled = spec;
    const double m = rng.uniform(0.2, 5.0);
    for (double& c : scaled.costs.data) c *= m;
    const auto start = default_initial(spec);
    const auto a = equilibrate(spec, start, 1e-12, 1000);
    const auto b = equilibrate(scaled, start, 1e-12, 1000);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(b.impacts[j] == doctest::Approx(a.impacts[j]).epsilon(1e-10));
    for (std::size_t idx = 0; idx < a.actions.a.data.size(); ++idx)
      CHECK(b.actions.a.data[idx] ==
            doctest::Approx(a.actions.a.data[idx] / m).epsilon(1e-10));
  }
}

TEST_CASE("round exhaustion reports converged=false") {
  const auto spec = counterexample_game();
  const auto eq = equilibrate(spec, VenueImpacts({1.0, 20.0}), 1e-12, 1);
  CHECK_FALSE(eq.converged);
  CHECK(eq.rounds == 1);
}
