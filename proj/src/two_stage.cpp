#include "rht/two_stage.hpp"

#include <algorithm>
#include <cmath>

#include "rht/stats.hpp"

namespace rht {

namespace {

// Smallest count s in [0, k_l] of legitimate ones that reaches the H1 region,
// or k_l + 1 when no count does. `extra_ones` / `extra_zeros` are the trusted
// malicious reports.
std::size_t first_h1_count(std::size_t k_l, std::size_t extra_ones, std::size_t extra_zeros, double gamma_ts,
                           const FusionWeights& w) {
  for (std::size_t s = 0; s <= k_l; ++s) {
    if (fusion_statistic(s + extra_ones, k_l - s + extra_zeros, w) >= gamma_ts) return s;
  }
  return k_l + 1;
}

// Conditional error tables indexed [k_l][k_m]; they depend on the split and the
// fusion threshold only, so one table serves the whole (gamma_t, p_t) scan.
class WorstCaseEvaluator {
 public:
  WorstCaseEvaluator(const LegitimateSensorModel& sensors, const Priors& priors, double gamma_ts,
                     std::size_t legit_count, std::size_t malicious_count)
      : priors_(priors),
        legit_(legit_count),
        malicious_(malicious_count),
        fa_((legit_count + 1) * (malicious_count + 1)),
        md_((legit_count + 1) * (malicious_count + 1)) {
    const FusionWeights w = weights(sensors);
    for (std::size_t kl = 0; kl <= legit_; ++kl) {
      for (std::size_t km = 0; km <= malicious_; ++km) {
        fa_[index(kl, km)] = conditional_fa(kl, km, gamma_ts, sensors, w);
        md_[index(kl, km)] = conditional_md(kl, km, gamma_ts, sensors, w);
      }
    }
  }

  WorstCaseBreakdown evaluate(const TrustProbabilities& trust) const {
    std::vector<double> pl(legit_ + 1), pm(malicious_ + 1);
    for (std::size_t k = 0; k <= legit_; ++k) pl[k] = binom_pmf(k, trust.legit, legit_);
    for (std::size_t k = 0; k <= malicious_; ++k) pm[k] = binom_pmf(k, trust.malicious, malicious_);
    WorstCaseBreakdown out;
    for (std::size_t kl = 0; kl <= legit_; ++kl) {
      for (std::size_t km = 0; km <= malicious_; ++km) {
        const double weight = pl[kl] * pm[km];
        out.p_fa += weight * fa_[index(kl, km)];
        out.p_md += weight * md_[index(kl, km)];
      }
    }
    out.p_e = priors_.h0 * out.p_fa + priors_.h1 * out.p_md;
    return out;
  }

 private:
  std::size_t index(std::size_t kl, std::size_t km) const { return kl * (malicious_ + 1) + km; }

  Priors priors_;
  std::size_t legit_;
  std::size_t malicious_;
  std::vector<double> fa_;
  std::vector<double> md_;
};

}  // namespace

FusionWeights weights(const LegitimateSensorModel& sensors) {
  sensors.validate();
  return {std::log((1.0 - sensors.p_md_l) / sensors.p_fa_l), std::log((1.0 - sensors.p_fa_l) / sensors.p_md_l)};
}

TwoStageConfig TwoStageConfig::from_priors(const Priors& priors, double m_bar, double delta_p) {
  TwoStageConfig config;
  config.m_bar = m_bar;
  config.delta_p = delta_p;
  config.priors = priors;
  config.gamma_ts = priors.log_ratio();
  return config;
}

void TwoStageConfig::validate() const {
  priors.validate();
  if (!(m_bar >= 0.0 && m_bar <= 1.0)) throw ValidationError("m_bar must lie in [0, 1]");
  if (!(delta_p > 0.0 && delta_p <= 1.0)) throw ValidationError("delta_p must lie in (0, 1]");
  const double steps = std::round(1.0 / delta_p);
  if (std::abs(steps * delta_p - 1.0) > 1e-9) {
    throw ValidationError("delta_p = " + std::to_string(delta_p) + " does not divide 1");
  }
  if (!std::isfinite(gamma_ts)) throw ValidationError("gamma_ts must be finite");
}

std::vector<double> TwoStageConfig::p_grid() const {
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / delta_p));
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(steps);
  return grid;
}

TrustProbabilities trust_probabilities(const TrustModel& model, double gamma_t, double p_t) {
  if (!(p_t >= 0.0 && p_t <= 1.0)) throw DomainError("p_t outside [0,1]");
  TrustProbabilities out;
  for (Symbol a = 0; a < model.size(); ++a) {
    // Ratios are recomputed from the same pmf entries as ratio_set, so a threshold
    // taken from that set matches its own symbol bit for bit.
    const double ratio = trust_lr(model, a);
    double accept = 0.0;
    if (ratio > gamma_t) {
      accept = 1.0;
    } else if (ratio == gamma_t) {
      accept = p_t;
    }
    out.legit += accept * model.legit(a);
    out.malicious += accept * model.malicious(a);
  }
  out.legit = std::min(out.legit, 1.0);
  out.malicious = std::min(out.malicious, 1.0);
  return out;
}

double conditional_fa(std::size_t k_l, std::size_t k_m, double gamma_ts, const LegitimateSensorModel& sensors,
                      const FusionWeights& w) {
  const std::size_t c = first_h1_count(k_l, k_m, 0, gamma_ts, w);
  return binom_sf(static_cast<std::int64_t>(c), sensors.p_fa_l, static_cast<std::int64_t>(k_l));
}

double conditional_md(std::size_t k_l, std::size_t k_m, double gamma_ts, const LegitimateSensorModel& sensors,
                      const FusionWeights& w) {
  const std::size_t c = first_h1_count(k_l, 0, k_m, gamma_ts, w);
  return binom_cdf(static_cast<std::int64_t>(c) - 1, 1.0 - sensors.p_md_l, static_cast<std::int64_t>(k_l));
}

WorstCaseBreakdown worst_case_error_split(const TrustModel& model, const LegitimateSensorModel& sensors,
                                          const Priors& priors, double gamma_ts, std::size_t legit_count,
                                          std::size_t malicious_count, double gamma_t, double p_t) {
  const WorstCaseEvaluator evaluator(sensors, priors, gamma_ts, legit_count, malicious_count);
  return evaluator.evaluate(trust_probabilities(model, gamma_t, p_t));
}

double worst_case_error(const TrustModel& model, const LegitimateSensorModel& sensors,
                        const TwoStageConfig& config, std::size_t n, double gamma_t, double p_t) {
  config.validate();
  const std::size_t m = malicious_count_for(config.m_bar, n);
  return worst_case_error_split(model, sensors, config.priors, config.gamma_ts, n - m, m, gamma_t, p_t).p_e;
}

ThresholdChoice optimize_thresholds(const TrustModel& model, const LegitimateSensorModel& sensors,
                                    const TwoStageConfig& config, std::size_t n) {
  config.validate();
  const std::size_t m = malicious_count_for(config.m_bar, n);
  const WorstCaseEvaluator evaluator(sensors, config.priors, config.gamma_ts, n - m, m);
  const auto p_grid = config.p_grid();

  ThresholdChoice best;
  best.worst_case_pe = 2.0;
  for (double gamma_t : ratio_set(model)) {
    for (double p_t : p_grid) {
      const double pe = evaluator.evaluate(trust_probabilities(model, gamma_t, p_t)).p_e;
      if (pe < best.worst_case_pe) best = {gamma_t, p_t, pe};
    }
  }
  best.worst_case_pe = std::clamp(best.worst_case_pe, 0.0, 1.0);
  return best;
}

BitVector classify_trust(const TrustModel& model, double gamma_t, double p_t, std::span<const Symbol> a,
                         RandomStream& rng) {
  BitVector t_hat(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ratio = trust_lr(model, a[i]);
    if (ratio > gamma_t) {
      t_hat[i] = 1;
    } else if (ratio == gamma_t) {
      t_hat[i] = rng.bernoulli(p_t) ? 1 : 0;
    }
  }
  return t_hat;
}

FusionDecision decide_hypothesis(std::span<const std::uint8_t> y, std::span<const std::uint8_t> t_hat,
                                 const FusionWeights& w, double gamma_ts) {
  if (y.size() != t_hat.size()) throw DomainError("decide_hypothesis: y and t_hat lengths differ");
  std::size_t ones = 0, zeros = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!t_hat[i]) continue;
    if (y[i]) {
      ++ones;
    } else {
      ++zeros;
    }
  }
  FusionDecision out;
  out.statistic = fusion_statistic(ones, zeros, w);
  out.trusted = ones + zeros;
  out.hypothesis = out.statistic >= gamma_ts ? Hypothesis::kH1 : Hypothesis::kH0;
  return out;
}

FusionDecision decide_hypothesis(std::span<const std::uint8_t> y, std::span<const std::uint8_t> t_hat,
                                 const LegitimateSensorModel& sensors, double gamma_ts) {
  return decide_hypothesis(y, t_hat, weights(sensors), gamma_ts);
}

DecisionOutcome run_2sa(const Trial& trial, const ThresholdChoice& thresholds, const TrustModel& model,
                        const LegitimateSensorModel& sensors, double gamma_ts, RandomStream& rng) {
  BitVector t_hat = classify_trust(model, thresholds.gamma_t, thresholds.p_t, trial.a, rng);
  const FusionDecision fused = decide_hypothesis(trial.y, t_hat, sensors, gamma_ts);
  DecisionOutcome out;
  out.hypothesis = fused.hypothesis;
  out.t_hat = std::move(t_hat);
  out.diagnostics["statistic"] = fused.statistic;
  out.diagnostics["trusted_count"] = static_cast<double>(fused.trusted);
  return out;
}

}  // namespace rht
