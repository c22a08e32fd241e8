#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rht/models.hpp"
#include "rht/rng.hpp"
#include "rht/stats.hpp"

namespace rht {

/// Log-likelihood weights of a single legitimate report: a trusted 1 adds w1,
/// a trusted 0 subtracts w0.
struct FusionWeights {
  double w1 = 0.0;
  double w0 = 0.0;
};

FusionWeights weights(const LegitimateSensorModel& sensors);

/// S_N for n1 trusted ones and n0 trusted zeros. Every fusion decision and every
/// closed-form error term goes through this one function, so exact ties (for
/// example n1 == n0 with symmetric sensors) resolve identically everywhere.
inline double fusion_statistic(std::size_t n1, std::size_t n0, const FusionWeights& w) {
  return static_cast<double>(n1) * w.w1 - static_cast<double>(n0) * w.w0;
}

struct TwoStageConfig {
  double m_bar = 0.0;     // upper bound on the malicious proportion, in [0, 1]
  double delta_p = 0.01;  // tie-break probability grid step
  Priors priors;
  double gamma_ts = 0.0;  // ln(Pr(H0)/Pr(H1))

  static TwoStageConfig from_priors(const Priors& priors, double m_bar, double delta_p = 0.01);
  void validate() const;
  /// Tie-break grid {0, delta_p, ..., 1}, generated as i/K so nested grids share points exactly.
  std::vector<double> p_grid() const;
};

struct ThresholdChoice {
  double gamma_t = 0.0;
  double p_t = 0.0;
  double worst_case_pe = 1.0;
};

struct TrustProbabilities {
  double legit = 0.0;      // Pr(trusted | legitimate)
  double malicious = 0.0;  // Pr(trusted | malicious)
};

/// Probability of trusting a legitimate / malicious robot under the rule
/// LR(a) > gamma_t, with a Bernoulli(p_t) draw at equality.
TrustProbabilities trust_probabilities(const TrustModel& model, double gamma_t, double p_t);

/// Pr(S_N >= gamma_ts | H0) with k_l trusted legitimate robots and k_m trusted
/// malicious robots that always report 1.
double conditional_fa(std::size_t k_l, std::size_t k_m, double gamma_ts,
                      const LegitimateSensorModel& sensors, const FusionWeights& w);

/// Pr(S_N < gamma_ts | H1) with k_m trusted malicious robots that always report 0.
double conditional_md(std::size_t k_l, std::size_t k_m, double gamma_ts,
                      const LegitimateSensorModel& sensors, const FusionWeights& w);

struct WorstCaseBreakdown {
  double p_fa = 0.0;
  double p_md = 0.0;
  double p_e = 0.0;
};

/// Exact error of the two-stage rule against the worst-case attack
/// (P_FA,M = P_MD,M = 1) with an explicit legitimate / malicious split.
WorstCaseBreakdown worst_case_error_split(const TrustModel& model, const LegitimateSensorModel& sensors,
                                          const Priors& priors, double gamma_ts, std::size_t legit_count,
                                          std::size_t malicious_count, double gamma_t, double p_t);

/// Worst-case error with ceil(m_bar * n) malicious robots.
double worst_case_error(const TrustModel& model, const LegitimateSensorModel& sensors,
                        const TwoStageConfig& config, std::size_t n, double gamma_t, double p_t);

/// Exhaustive minimax scan over the trust ratio set and the p_t grid. Ties go to
/// the smaller gamma_t, then the smaller p_t.
ThresholdChoice optimize_thresholds(const TrustModel& model, const LegitimateSensorModel& sensors,
                                    const TwoStageConfig& config, std::size_t n);

BitVector classify_trust(const TrustModel& model, double gamma_t, double p_t, std::span<const Symbol> a,
                         RandomStream& rng);

struct FusionDecision {
  Hypothesis hypothesis = Hypothesis::kH0;
  double statistic = 0.0;
  std::size_t trusted = 0;
};

/// Standard fusion rule over trusted robots: H1 iff S_N >= gamma_ts.
FusionDecision decide_hypothesis(std::span<const std::uint8_t> y, std::span<const std::uint8_t> t_hat,
                                 const FusionWeights& w, double gamma_ts);
FusionDecision decide_hypothesis(std::span<const std::uint8_t> y, std::span<const std::uint8_t> t_hat,
                                 const LegitimateSensorModel& sensors, double gamma_ts);

DecisionOutcome run_2sa(const Trial& trial, const ThresholdChoice& thresholds, const TrustModel& model,
                        const LegitimateSensorModel& sensors, double gamma_ts, RandomStream& rng);

}  // namespace rht
