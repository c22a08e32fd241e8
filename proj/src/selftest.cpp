#include "rht/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "rht/aglrt.hpp"
#include "rht/simulator.hpp"

namespace rht {

namespace {

double uniform_in(RandomStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

std::vector<double> random_pmf(std::size_t size, RandomStream& rng) {
  std::vector<double> pmf(size);
  double total = 0.0;
  for (auto& p : pmf) total += (p = uniform_in(rng, 0.05, 1.0));
  for (auto& p : pmf) p /= total;
  return pmf;
}

bool same_log(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

}  // namespace

Scenario random_scenario(std::size_t n, RandomStream& rng) {
  Scenario sc;
  sc.n = n;
  const double h0 = uniform_in(rng, 0.05, 0.95);
  sc.priors = {h0, 1.0 - h0};
  sc.sensors = {uniform_in(rng, 0.01, 0.49), uniform_in(rng, 0.01, 0.49)};
  sc.attack = {uniform_in(rng, 0.0, 0.49), uniform_in(rng, 0.0, 0.49), rng.uniform()};
  const std::size_t symbols = 2 + static_cast<std::size_t>(rng.below(3));
  std::vector<std::string> alphabet;
  for (std::size_t s = 0; s < symbols; ++s) alphabet.push_back(std::to_string(s));
  sc.trust = TrustModel(alphabet, random_pmf(symbols, rng), random_pmf(symbols, rng));
  sc.truth.resize(n);
  for (auto& t : sc.truth) t = rng.bernoulli(0.5) ? 1 : 0;
  return sc;
}

SuiteResult check_aglrt_equivalence(const AglrtEquivalenceOptions& options) {
  SuiteResult suite;
  suite.name = "A-GLRT vs exhaustive GLRT";
  for (std::size_t n = 1; n <= options.max_robots; ++n) {
    RandomStream rng = RandomStream::derive(options.seed, "aglrt-equivalence", n);
    const CandidateSet candidates = candidate_set(n);
    for (std::size_t i = 0; i < options.instances; ++i) {
      const Scenario sc = random_scenario(n, rng);
      const Trial trial = sample_trial(sc, rng);
      const GlrtResult fast = aglrt_evaluate(trial, sc.trust, sc.sensors, sc.priors, candidates);
      const GlrtResult slow = brute_force_evaluate(trial, sc.trust, sc.sensors, sc.priors);
      const double d1 = fast.numerator.log_likelihood.value - slow.numerator.log_likelihood.value;
      const double d0 = fast.denominator.log_likelihood.value - slow.denominator.log_likelihood.value;
      if (std::isfinite(d1)) suite.max_deviation = std::max(suite.max_deviation, std::fabs(d1));
      if (std::isfinite(d0)) suite.max_deviation = std::max(suite.max_deviation, std::fabs(d0));
      const bool ok = fast.outcome.hypothesis == slow.outcome.hypothesis &&
                      same_log(fast.numerator.log_likelihood.value, slow.numerator.log_likelihood.value,
                               options.tolerance) &&
                      same_log(fast.denominator.log_likelihood.value, slow.denominator.log_likelihood.value,
                               options.tolerance);
      ++suite.checks;
      if (!ok) {
        if (suite.failures++ == 0) {
          char buf[200];
          std::snprintf(buf, sizeof buf, "N=%zu instance %zu: H1 %.12g vs %.12g, H0 %.12g vs %.12g", n, i,
                        fast.numerator.log_likelihood.value, slow.numerator.log_likelihood.value,
                        fast.denominator.log_likelihood.value, slow.denominator.log_likelihood.value);
          suite.first_failure = buf;
        }
      }
    }
  }
  return suite;
}

SuiteResult check_closed_form(const ClosedFormOptions& options, std::vector<ClosedFormCase>* cases) {
  SuiteResult suite;
  suite.name = "2SA closed form vs Monte Carlo";
  RandomStream rng = RandomStream::derive(options.seed, "closed-form-configs");
  for (std::size_t c = 0; c < options.configs; ++c) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(options.max_robots - 1));
    Scenario sc = random_scenario(n, rng);
    // Worst-case attack: every malicious robot always reports the wrong bit.
    sc.attack = {0.0, 0.0, 1.0};
    const double m_bar = static_cast<double>(rng.below(n + 1)) / static_cast<double>(n);
    const TwoStageConfig config = TwoStageConfig::from_priors(sc.priors, m_bar, 0.05);

    ClosedFormCase result;
    result.n = n;
    result.m_bar = m_bar;
    result.malicious = malicious_count_for(m_bar, n);
    if (c % 2 == 0) {
      result.thresholds = optimize_thresholds(sc.trust, sc.sensors, config, n);
    } else {
      const auto ratios = ratio_set(sc.trust);
      result.thresholds.gamma_t = ratios[rng.below(ratios.size())];
      result.thresholds.p_t = static_cast<double>(rng.below(21)) / 20.0;
    }
    result.closed_form =
        worst_case_error(sc.trust, sc.sensors, config, n, result.thresholds.gamma_t, result.thresholds.p_t);

    RandomStream placement = RandomStream::derive(options.seed, "closed-form-placement", c);
    sc.truth = place_malicious(n, result.malicious, placement);
    RandomStream trials = RandomStream::derive(options.seed, "closed-form-trials", c);
    RandomStream ties = RandomStream::derive(options.seed, "closed-form-ties", c);
    std::size_t errors = 0;
    for (std::size_t t = 0; t < options.trials; ++t) {
      const Trial trial = sample_trial(sc, trials);
      const DecisionOutcome out = run_2sa(trial, result.thresholds, sc.trust, sc.sensors, config.gamma_ts, ties);
      if (out.hypothesis != trial.xi) ++errors;
    }
    result.empirical = static_cast<double>(errors) / static_cast<double>(options.trials);
    result.sigma = std::sqrt(result.closed_form * (1.0 - result.closed_form) / static_cast<double>(options.trials));

    const double gap = std::fabs(result.empirical - result.closed_form);
    const double z = result.sigma > 0.0 ? gap / result.sigma : (gap == 0.0 ? 0.0 : INFINITY);
    suite.max_deviation = std::max(suite.max_deviation, z);
    ++suite.checks;
    if (z > options.sigmas && suite.failures++ == 0) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "config %zu (N=%zu, M=%zu): closed form %.6f, empirical %.6f, %.2f sigma", c,
                    n, result.malicious, result.closed_form, result.empirical, z);
      suite.first_failure = buf;
    }
    if (cases) cases->push_back(result);
  }
  return suite;
}

}  // namespace rht
