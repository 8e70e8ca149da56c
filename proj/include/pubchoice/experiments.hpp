#pragma once

#include <cstdint>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "pubchoice/spotlight.hpp"

namespace pubchoice::experiments {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kRngId = "mt19937_64-shift53";

/// Raised on malformed or contradictory configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic uniform generator; a 64-bit seed fully determines all draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

 private:
  std::mt19937_64 eng_;
};

/// theta_i = i^2 with masses 50/25/15/7/3% (renormalized on truncation),
/// c(i,1) = 1 and c(i,j) = exp(g j^2 / i^2) for j > 1 (1-based indices).
GameSpec build_appendix_game(double g, std::size_t n_types = 5, std::size_t n_venues = 3,
                             double budget = 40.0);

struct ExperimentConfig {
  GameSpec game;
  bool parametric = true;  // game built from the (g, n_types, n_venues) family
  double g = 0.6;
  std::size_t n_types = 5;
  std::size_t n_venues = 3;

  std::string kind;
  std::uint64_t seed = 1;
  double eps = 1e-5;
  int max_rounds = 1000;
  int n_starts = 50;
  std::vector<double> g_values{0.2, 0.3, 0.4, 0.6};
  std::vector<double> ratios{0.05, 0.25, 0.80};
  std::vector<std::size_t> venues;  // 1-based spotlight venues; empty = all

  std::size_t sp_venue = 3;  // 1-based
  double sp_ratio = 0.24;
  double sp_p = 1.77;
  bool has_spotlight = false;

  nlohmann::json echo;  // resolved config embedded in every output
};

/// Parses the config document; unknown keys are rejected. The cost-family
/// parameter z is accepted and ignored (it does not enter the cost rule).
ExperimentConfig parse_config(const nlohmann::json& doc);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells pre-formatted
};

struct StudyResult {
  std::string kind;
  Table table;
  nlohmann::json details;
  std::vector<Violation> violations;
  bool numeric_failure = false;
};

StudyResult run_equilibrate(const ExperimentConfig& cfg);
StudyResult run_binary_root(const ExperimentConfig& cfg);
StudyResult run_spotlight(const ExperimentConfig& cfg);
StudyResult run_convergence_study(const ExperimentConfig& cfg);
StudyResult run_uniqueness_study(const ExperimentConfig& cfg);
StudyResult run_cost_sweep(const ExperimentConfig& cfg);
StudyResult run_spotlight_threshold(const ExperimentConfig& cfg);
StudyResult run_spotlight_ratio_sweep(const ExperimentConfig& cfg);

StudyResult run_study(const ExperimentConfig& cfg);  // dispatch on cfg.kind

/// Writes <kind>.csv / <kind>.json / <kind>.svg under out_dir, plus
/// <kind>.violations.json whenever assertions failed. Format is one of
/// "csv", "json", "svg"; SVG is only available for figure-style studies.
std::vector<std::filesystem::path> emit_results(const StudyResult& result,
                                                const std::string& format,
                                                const std::filesystem::path& out_dir);

/// Full-precision decimal formatting used in every output (17 significant
/// digits, '.' decimal separator).
std::string format_double(double x);

}  // namespace pubchoice::experiments
