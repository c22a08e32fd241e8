#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rht/models.hpp"
#include "rht/stats.hpp"

namespace rht {

/// Reduced fraction num/den with 0 <= num <= den.
struct Fraction {
  std::uint32_t num = 0;
  std::uint32_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Every empirical rate T_n / T_d with T_d in 1..N, reduced, deduplicated and
/// sorted ascending. These are the only values the adversary MLE can take.
struct CandidateSet {
  std::vector<Fraction> fractions;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

CandidateSet candidate_set(std::size_t n);

struct InnerMaxResult {
  LogLikelihood log_likelihood;
  BitVector t_hat;
};

/// Per-robot log likelihood terms of one hypothesis branch. Legitimate terms do
/// not depend on the adversary parameter and are computed once per trial.
class BranchTerms {
 public:
  BranchTerms(std::span<const Symbol> a, std::span<const std::uint8_t> y, Hypothesis branch,
              const TrustModel& trust, const LegitimateSensorModel& sensors);

  std::size_t size() const { return legit_.size(); }
  /// ln p(a_i|legit) + ln Pr(y_i | branch, legitimate sensor).
  double legit(std::size_t i) const { return legit_[i]; }
  /// ln p(a_i|malicious) + ln Pr(y_i | branch, adversary parameter p_m).
  double malicious(std::size_t i, double log_p, double log_q) const {
    return trust_malicious_[i] + (uses_p_[i] ? log_p : log_q);
  }
  /// Whether robot i's report counts toward the adversary rate of this branch
  /// (a 0 under H1, a 1 under H0).
  bool uses_p(std::size_t i) const { return uses_p_[i] != 0; }

 private:
  std::vector<double> legit_;
  std::vector<double> trust_malicious_;
  std::vector<std::uint8_t> uses_p_;
};

/// Maximizes the branch likelihood over t for a fixed adversary parameter by
/// choosing t_i = 1 whenever c_L,i >= c_M,i.
InnerMaxResult inner_max(double p_m, std::span<const Symbol> a, std::span<const std::uint8_t> y, Hypothesis branch,
                         const TrustModel& trust, const LegitimateSensorModel& sensors);
InnerMaxResult inner_max(double p_m, const BranchTerms& terms);

/// Empirical missed-detection (H1) or false-alarm (H0) rate of the robots with
/// t_i = 0; 0 when there are none.
double mle_adversary_param(std::span<const std::uint8_t> t, std::span<const std::uint8_t> y, Hypothesis branch);

struct BranchMaximum {
  LogLikelihood log_likelihood;
  BitVector t_hat;
  double p_m = 0.0;
};

struct GlrtResult {
  BranchMaximum numerator;    // H1
  BranchMaximum denominator;  // H0
  DecisionOutcome outcome;
};

/// Polynomial-time GLRT: outer scan over the candidate set, inner per-robot comparisons.
GlrtResult aglrt_evaluate(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                          const Priors& priors, const CandidateSet& candidates);
DecisionOutcome aglrt_decide(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                             const Priors& priors);

/// Largest N the exhaustive GLRT accepts.
inline constexpr std::size_t kBruteForceMaxRobots = 16;

/// Exhaustive GLRT over all 2^N trust vectors with the closed-form adversary MLE.
/// Independent reference for aglrt_evaluate; refuses N > kBruteForceMaxRobots.
GlrtResult brute_force_evaluate(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                                const Priors& priors);
DecisionOutcome brute_force_glrt(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                                 const Priors& priors);

}  // namespace rht
