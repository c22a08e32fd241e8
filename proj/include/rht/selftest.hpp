#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rht/models.hpp"
#include "rht/rng.hpp"
#include "rht/two_stage.hpp"

namespace rht {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Largest observed deviation (absolute for log-likelihoods, in sigmas for Monte Carlo).
  double max_deviation = 0.0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

/// Random priors, sensors in (0, 0.5), attack, trust pmf over 2 to 4 symbols
/// with strictly positive masses, and a random truth vector.
Scenario random_scenario(std::size_t n, RandomStream& rng);

struct AglrtEquivalenceOptions {
  std::size_t max_robots = 8;
  std::size_t instances = 1000;  // per robot count
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
};

/// Polynomial A-GLRT against the exhaustive 2^N search on random instances:
/// same decision, branch log-likelihoods within tolerance.
SuiteResult check_aglrt_equivalence(const AglrtEquivalenceOptions& options);

struct ClosedFormCase {
  std::size_t n = 0;
  double m_bar = 0.0;
  std::size_t malicious = 0;
  ThresholdChoice thresholds;
  double closed_form = 0.0;
  double empirical = 0.0;
  double sigma = 0.0;
};

struct ClosedFormOptions {
  std::size_t configs = 6;
  std::size_t trials = 100000;
  std::uint64_t seed = 7;
  std::size_t max_robots = 12;
  double sigmas = 3.0;
};

/// Exact worst-case 2SA error against simulated worst-case attacks. Even cases
/// use optimized thresholds, odd cases a random (gamma_t, p_t).
SuiteResult check_closed_form(const ClosedFormOptions& options, std::vector<ClosedFormCase>* cases = nullptr);

}  // namespace rht
