#include "rht/aglrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rht {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_trial(const Trial& trial, const TrustModel& trust) {
  if (trial.y.size() != trial.a.size()) throw DomainError("trial y and a lengths differ");
  if (trial.y.empty()) throw DomainError("trial has no robots");
  for (Symbol s : trial.a) {
    if (s >= trust.size()) throw DomainError("trial trust symbol out of range");
  }
}

struct BranchScan {
  BranchMaximum best;
  std::size_t comparisons = 0;
};

BranchScan scan_branch(const BranchTerms& terms, const CandidateSet& candidates) {
  BranchScan scan;
  double best = kNegInf;
  std::size_t best_index = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double p = candidates.values[c];
    const double log_p = log_power(p, 1);
    const double log_q = log_power(1.0 - p, 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double legit = terms.legit(i);
      const double malicious = terms.malicious(i, log_p, log_q);
      sum += legit >= malicious ? legit : malicious;
    }
    scan.comparisons += terms.size();
    // Strict improvement keeps the smallest p_m among ties.
    if (sum > best) {
      best = sum;
      best_index = c;
    }
  }
  InnerMaxResult inner = inner_max(candidates.values[best_index], terms);
  scan.best.log_likelihood = inner.log_likelihood;
  scan.best.t_hat = std::move(inner.t_hat);
  scan.best.p_m = candidates.values[best_index];
  return scan;
}

DecisionOutcome make_outcome(const BranchMaximum& numerator, const BranchMaximum& denominator, const Priors& priors) {
  DecisionOutcome out;
  const double llr = numerator.log_likelihood.value - denominator.log_likelihood.value;
  const double threshold = priors.log_ratio();
  out.hypothesis = llr > threshold ? Hypothesis::kH1 : Hypothesis::kH0;
  const BranchMaximum& winner = out.hypothesis == Hypothesis::kH1 ? numerator : denominator;
  out.t_hat = winner.t_hat;
  const bool all_legit = std::all_of(winner.t_hat.begin(), winner.t_hat.end(), [](auto t) { return t == 1; });
  out.adversary_estimate = all_legit ? 0.0 : winner.p_m;
  out.diagnostics["log_numerator"] = numerator.log_likelihood.value;
  out.diagnostics["log_denominator"] = denominator.log_likelihood.value;
  out.diagnostics["log_ratio"] = llr;
  out.diagnostics["adversary_unidentified"] = all_legit ? 1.0 : 0.0;
  return out;
}

}  // namespace

CandidateSet candidate_set(std::size_t n) {
  if (n == 0) throw DomainError("candidate_set: robot count must be at least 1");
  CandidateSet set;
  set.fractions.push_back({0, 1});
  for (std::uint32_t den = 1; den <= n; ++den) {
    for (std::uint32_t num = 1; num <= den; ++num) {
      if (std::gcd(num, den) == 1) set.fractions.push_back({num, den});
    }
  }
  // Sort by value with exact cross-multiplication.
  std::sort(set.fractions.begin(), set.fractions.end(), [](const Fraction& l, const Fraction& r) {
    return static_cast<std::uint64_t>(l.num) * r.den < static_cast<std::uint64_t>(r.num) * l.den;
  });
  set.values.reserve(set.fractions.size());
  for (const Fraction& f : set.fractions) set.values.push_back(f.value());
  return set;
}

BranchTerms::BranchTerms(std::span<const Symbol> a, std::span<const std::uint8_t> y, Hypothesis branch,
                         const TrustModel& trust, const LegitimateSensorModel& sensors)
    : legit_(a.size()), trust_malicious_(a.size()), uses_p_(a.size()) {
  if (a.size() != y.size()) throw DomainError("BranchTerms: a and y lengths differ");
  const bool h1 = branch == Hypothesis::kH1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool one = y[i] != 0;
    // Probability of the observed report from a legitimate sensor.
    const double report = h1 ? (one ? 1.0 - sensors.p_md_l : sensors.p_md_l)
                             : (one ? sensors.p_fa_l : 1.0 - sensors.p_fa_l);
    legit_[i] = log_power(trust.legit(a[i]), 1) + log_power(report, 1);
    trust_malicious_[i] = log_power(trust.malicious(a[i]), 1);
    uses_p_[i] = h1 ? !one : one;
  }
}

InnerMaxResult inner_max(double p_m, const BranchTerms& terms) {
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw DomainError("inner_max: p_m outside [0,1]");
  const double log_p = log_power(p_m, 1);
  const double log_q = log_power(1.0 - p_m, 1);
  InnerMaxResult out;
  out.t_hat.resize(terms.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double legit = terms.legit(i);
    const double malicious = terms.malicious(i, log_p, log_q);
    out.t_hat[i] = legit >= malicious ? 1 : 0;
    sum += out.t_hat[i] ? legit : malicious;
  }
  out.log_likelihood = {sum};
  return out;
}

InnerMaxResult inner_max(double p_m, std::span<const Symbol> a, std::span<const std::uint8_t> y, Hypothesis branch,
                         const TrustModel& trust, const LegitimateSensorModel& sensors) {
  return inner_max(p_m, BranchTerms(a, y, branch, trust, sensors));
}

double mle_adversary_param(std::span<const std::uint8_t> t, std::span<const std::uint8_t> y, Hypothesis branch) {
  if (t.size() != y.size()) throw DomainError("mle_adversary_param: t and y lengths differ");
  std::size_t malicious = 0, hits = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i]) continue;
    ++malicious;
    const bool counts = branch == Hypothesis::kH1 ? y[i] == 0 : y[i] == 1;
    if (counts) ++hits;
  }
  if (malicious == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(malicious);
}

GlrtResult aglrt_evaluate(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                          const Priors& priors, const CandidateSet& candidates) {
  check_trial(trial, trust);
  const BranchTerms h1(trial.a, trial.y, Hypothesis::kH1, trust, sensors);
  const BranchTerms h0(trial.a, trial.y, Hypothesis::kH0, trust, sensors);
  BranchScan num = scan_branch(h1, candidates);
  BranchScan den = scan_branch(h0, candidates);
  GlrtResult result{std::move(num.best), std::move(den.best), {}};
  result.outcome = make_outcome(result.numerator, result.denominator, priors);
  result.outcome.diagnostics["comparisons"] = static_cast<double>(num.comparisons + den.comparisons);
  return result;
}

DecisionOutcome aglrt_decide(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                             const Priors& priors) {
  return aglrt_evaluate(trial, trust, sensors, priors, candidate_set(trial.size())).outcome;
}

GlrtResult brute_force_evaluate(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                                const Priors& priors) {
  check_trial(trial, trust);
  const std::size_t n = trial.size();
  if (n > kBruteForceMaxRobots) {
    throw DomainError("brute_force_glrt: refusing N = " + std::to_string(n) + " (limit " +
                      std::to_string(kBruteForceMaxRobots) + ")");
  }

  auto maximize = [&](Hypothesis branch) {
    const bool h1 = branch == Hypothesis::kH1;
    BranchMaximum best;
    best.log_likelihood = LogLikelihood::zero_probability();
    BitVector t(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) t[i] = (mask >> i) & 1U;
      const double p = mle_adversary_param(t, trial.y, branch);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool one = trial.y[i] != 0;
        if (t[i]) {
          const double report = h1 ? (one ? 1.0 - sensors.p_md_l : sensors.p_md_l)
                                   : (one ? sensors.p_fa_l : 1.0 - sensors.p_fa_l);
          sum += log_power(trust.legit(trial.a[i]), 1) + log_power(report, 1);
        } else {
          // A malicious robot reports the wrong bit with probability p.
          const bool wrong = h1 ? !one : one;
          sum += log_power(trust.malicious(trial.a[i]), 1) + log_power(wrong ? p : 1.0 - p, 1);
        }
      }
      if (sum > best.log_likelihood.value) {
        best.log_likelihood = {sum};
        best.t_hat = t;
        best.p_m = p;
      }
    }
    return best;
  };

  GlrtResult result{maximize(Hypothesis::kH1), maximize(Hypothesis::kH0), {}};
  result.outcome = make_outcome(result.numerator, result.denominator, priors);
  return result;
}

DecisionOutcome brute_force_glrt(const Trial& trial, const TrustModel& trust, const LegitimateSensorModel& sensors,
                                 const Priors& priors) {
  return brute_force_evaluate(trial, trust, sensors, priors).outcome;
}

}  // namespace rht
