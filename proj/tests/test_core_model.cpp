#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pubchoice/dynamics.hpp"
#include "support/oracle.hpp"

using namespace pubchoice;
namespace pt = pubchoice::testing;

namespace {

GameSpec small_valid_game() {
  GameSpec spec;
  spec.thetas = {1.0, 4.0};
  spec.masses = {0.5, 0.5};
  spec.costs = Matrix::from_rows({{1.0, 40.0}, {1.0, 15.0}});
  spec.alpha = 0.2;
  spec.beta = 2.0;
  spec.budget = 40.0;
  return spec;
}

bool has_violation(const ValidationReport& report, const std::string& code) {
  for (const auto& v : report.violations)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("validate_game accepts a well-formed game") {
  CHECK(validate_game(small_valid_game()).ok());
}

TEST_CASE("validate_game flags out-of-range alpha") {
  auto spec = small_valid_game();
  spec.alpha = 1.0;
  CHECK(has_violation(validate_game(spec), "alpha_out_of_range"));
}

TEST_CASE("validate_game flags non-positive costs") {
  auto spec = small_valid_game();
  spec.costs(0, 1) = -1.0;
  CHECK(has_violation(validate_game(spec), "non_positive_cost"));
}

TEST_CASE("validate_game flags remaining structural problems") {
  auto spec = small_valid_game();
  spec.beta = 1.0;
  spec.budget = 0.0;
  spec.thetas = {4.0, 1.0};
  spec.masses = {0.5, 0.0};
  const auto report = validate_game(spec);
  CHECK(has_violation(report, "beta_out_of_range"));
  CHECK(has_violation(report, "non_positive_budget"));
  CHECK(has_violation(report, "theta_not_increasing"));
  CHECK(has_violation(report, "non_positive_mass"));
}

TEST_CASE("check_mcr holds when the low/high cost ratio rises with the venue") {
  // Type order: row 0 low (1,40), row 1 high (1,15); 1/1 < 40/15.
  CHECK(check_mcr(Matrix::from_rows({{1, 40}, {1, 15}})).holds);
}

TEST_CASE("check_mcr rejects proportional rows (strict inequality)") {
  CHECK_FALSE(check_mcr(Matrix::from_rows({{1, 2}, {2, 4}})).holds);
}

TEST_CASE("check_mcr returns the first violating quadruple") {
  const auto res = check_mcr(Matrix::from_rows({{1, 2}, {1, 4}}));
  CHECK_FALSE(res.holds);
  CHECK(res.witness == std::array<std::size_t, 4>{0, 1, 0, 1});
}

TEST_CASE("check_noncompetitive_first") {
  CHECK(check_noncompetitive_first(Matrix::from_rows({{1, 3}, {1, 9}})));
  CHECK_FALSE(check_noncompetitive_first(Matrix::from_rows({{1, 3}, {1.5, 9}}), 1e-9));
  CHECK(check_noncompetitive_first(Matrix::from_rows({{1, 3}, {1 + 1e-12, 9}}), 1e-9));
}

TEST_CASE("is_rank_one_cost") {
  CHECK(is_rank_one_cost(Matrix::from_rows({{1, 2}, {3, 6}})));
  CHECK_FALSE(is_rank_one_cost(Matrix::from_rows({{1, 15}, {1, 40}})));
  CHECK(is_rank_one_cost(Matrix::from_rows({{2, 4}, {2, 4.0000001}}), 1e-6));
}

TEST_CASE("mcr and rank-one are mutually exclusive") {
  experiments::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto spec = pt::random_game(rng, 3, 3);
    CHECK(check_mcr(spec.costs).holds);
    CHECK_FALSE(is_rank_one_cost(spec.costs));
  }
  const Matrix rank_one = Matrix::from_rows({{1, 2, 5}, {2, 4, 10}, {0.5, 1, 2.5}});
  CHECK(is_rank_one_cost(rank_one));
  CHECK_FALSE(check_mcr(rank_one).holds);
}

TEST_CASE("normalize_binary rescales the low type to 1") {
  GameSpec spec = small_valid_game();
  spec.thetas = {1.0, 20.0};
  spec.masses = {2.0 / 3.0, 1.0 / 3.0};
  const auto norm = normalize_binary(spec);
  CHECK(norm.scale == doctest::Approx(1.0));
  CHECK(norm.mu_tilde == doctest::Approx(0.5));
  CHECK(norm.spec.thetas[0] == doctest::Approx(1.0));
  CHECK(norm.spec.thetas[1] == doctest::Approx(20.0));
}

TEST_CASE("normalize_binary divides by theta_low") {
  GameSpec spec = small_valid_game();
  spec.thetas = {2.0, 6.0};
  const auto norm = normalize_binary(spec);
  CHECK(norm.scale == doctest::Approx(2.0));
  CHECK(norm.spec.thetas[1] == doctest::Approx(3.0));
}

TEST_CASE("normalize_binary rejects non-binary games") {
  GameSpec spec;
  spec.thetas = {5.0, 6.0, 7.0};
  spec.masses = {0.3, 0.3, 0.4};
  spec.costs = Matrix(3, 2, 1.0);
  CHECK_THROWS_AS(normalize_binary(spec), std::invalid_argument);
}

TEST_CASE("scaling all types scales consistent impacts and fixes actions") {
  experiments::Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto spec = pt::random_game(rng, 3, 3);
    GameSpec scaled = spec;
    const double c = rng.uniform(0.5, 4.0);
    for (double& th : scaled.thetas) th *= c;

    VenueImpacts v(3, 0.0);
    for (std::size_t j = 0; j < 3; ++j)
      v[j] = rng.uniform(spec.thetas.front(), spec.thetas.back());
    VenueImpacts vc = v;
    for (std::size_t j = 0; j < 3; ++j) vc[j] *= c;

    const auto a = best_response_all(v, spec);
    const auto a_scaled = best_response_all(vc, scaled);
    for (std::size_t idx = 0; idx < a.a.data.size(); ++idx)
      CHECK(a_scaled.a.data[idx] == doctest::Approx(a.a.data[idx]).epsilon(1e-10));

    const auto next = step(v, spec);
    const auto next_scaled = step(vc, scaled);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(next_scaled[j] == doctest::Approx(c * next[j]).epsilon(1e-10));
  }
}
