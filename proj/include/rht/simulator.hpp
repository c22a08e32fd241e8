#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rht/models.hpp"
#include "rht/rng.hpp"

namespace rht {

enum class MethodKind { kTwoStage, kAglrt, kOracle, kOblivious, kReputation };

/// A decision method in an experiment. Reputation baselines carry their window
/// T and exclusion threshold eta.
struct MethodSpec {
  MethodKind kind = MethodKind::kOracle;
  std::size_t window = 0;
  double eta = 0.0;

  /// Accepts "2SA", "A-GLRT", "Oracle", "Oblivious", "Baseline:T:eta".
  static MethodSpec parse(std::string_view text);
  /// Canonical spelling accepted by parse().
  std::string key() const;
  /// Display name used in tables and plots.
  std::string name() const;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

struct ExperimentConfig {
  Scenario scenario;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::vector<MethodSpec> methods;
  std::optional<std::vector<double>> sweep;
  /// Proportion bound handed to 2SA for single runs; sweeps use the swept fraction.
  double m_bar = 0.0;
  double delta_p = 0.01;

  void validate() const;
};

struct MethodResult {
  std::string method;
  double malicious_fraction = 0.0;
  std::size_t trials = 0;
  std::size_t errors = 0;
  std::size_t h0_trials = 0;
  std::size_t false_alarms = 0;
  std::size_t h1_trials = 0;
  std::size_t missed_detections = 0;
  double error_rate = 0.0;
  double fa_rate = 0.0;
  double md_rate = 0.0;
  double mean_latency_us = 0.0;
  /// Digest of every trial this method was fed.
  std::uint64_t input_digest = 0;
};

struct ExperimentResult {
  double malicious_fraction = 0.0;
  std::size_t malicious_count = 0;
  std::uint64_t seed = 0;
  std::vector<MethodResult> methods;

  const MethodResult& method(std::string_view name) const;
};

/// One realization: event, legitimate noise, malicious raw bit plus flip, trust symbols.
Trial sample_trial(const Scenario& scenario, RandomStream& rng);

/// Truth vector with `malicious` zeros at seeded-shuffle positions.
BitVector place_malicious(std::size_t n, std::size_t malicious, RandomStream& rng);

/// Feeds one trial stream to every configured method. Thresholds for 2SA are
/// optimized once up front with `m_bar`. `point` selects independent substreams.
ExperimentResult run_point(const ExperimentConfig& config, const Scenario& scenario, double m_bar,
                           std::uint64_t point);

/// Single experiment with the scenario's own truth vector.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// One experiment per swept fraction, ceil(f N) malicious robots, 2SA bound m_bar = f.
std::vector<ExperimentResult> sweep_malicious_fraction(const ExperimentConfig& config);

std::uint64_t trial_digest(const Trial& trial, std::uint64_t seed);

}  // namespace rht
