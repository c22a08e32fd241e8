#include "rht/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <string>

#include "rht/aglrt.hpp"
#include "rht/baselines.hpp"
#include "rht/two_stage.hpp"

namespace rht {

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ v); }

Symbol sample_symbol(const std::vector<double>& pmf, RandomStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (Symbol s = 0; s < pmf.size(); ++s) {
    acc += pmf[s];
    if (u < acc) return s;
  }
  // Rounding in the cumulative sum: fall back to the last symbol with mass.
  for (Symbol s = pmf.size(); s-- > 0;) {
    if (pmf[s] > 0.0) return s;
  }
  return 0;
}

// Per-method running state for one trial stream.
struct MethodRunner {
  MethodSpec spec;
  MethodResult result;
  std::optional<ReputationState> reputation;
  std::chrono::nanoseconds elapsed{0};
};

}  // namespace

MethodSpec MethodSpec::parse(std::string_view text) {
  if (text == "2SA") return {MethodKind::kTwoStage};
  if (text == "A-GLRT") return {MethodKind::kAglrt};
  if (text == "Oracle") return {MethodKind::kOracle};
  if (text == "Oblivious") return {MethodKind::kOblivious};
  constexpr std::string_view prefix = "Baseline:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string rest(text.substr(prefix.size()));
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      try {
        std::size_t used = 0;
        const unsigned long window = std::stoul(rest.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("window");
        const std::string eta_text = rest.substr(colon + 1);
        const double eta = std::stod(eta_text, &used);
        if (used != eta_text.size()) throw std::invalid_argument("eta");
        return {MethodKind::kReputation, window, eta};
      } catch (const std::exception&) {
        // fall through to the error below
      }
    }
  }
  throw ValidationError("unknown method '" + std::string(text) +
                        "' (expected 2SA, A-GLRT, Oracle, Oblivious or Baseline:T:eta)");
}

std::string MethodSpec::key() const {
  switch (kind) {
    case MethodKind::kTwoStage: return "2SA";
    case MethodKind::kAglrt: return "A-GLRT";
    case MethodKind::kOracle: return "Oracle";
    case MethodKind::kOblivious: return "Oblivious";
    case MethodKind::kReputation: return "Baseline:" + std::to_string(window) + ":" + format_g(eta);
  }
  return {};
}

std::string MethodSpec::name() const {
  if (kind == MethodKind::kReputation) return "Baseline-T" + std::to_string(window) + "-eta" + format_g(eta);
  return key();
}

void ExperimentConfig::validate() const {
  scenario.validate();
  if (trials < 1) throw ValidationError("trials must be at least 1");
  if (methods.empty()) throw ValidationError("at least one method is required");
  for (const auto& m : methods) {
    if (m.kind == MethodKind::kReputation) ReputationState(1, m.window, m.eta);
  }
  if (sweep) {
    if (sweep->empty()) throw ValidationError("sweep list is empty");
    for (double f : *sweep) {
      if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("sweep fraction " + format_g(f) + " outside [0, 1]");
    }
  }
  TwoStageConfig::from_priors(scenario.priors, m_bar, delta_p).validate();
}

const MethodResult& ExperimentResult::method(std::string_view name) const {
  for (const auto& m : methods) {
    if (m.method == name) return m;
  }
  throw std::out_of_range("no result for method '" + std::string(name) + "'");
}

Trial sample_trial(const Scenario& scenario, RandomStream& rng) {
  Trial trial;
  trial.truth = scenario.truth;
  trial.xi = hypothesis_from_bit(rng.bernoulli(scenario.priors.h1));
  const bool event = trial.xi == Hypothesis::kH1;
  trial.y.resize(scenario.n);
  trial.a.resize(scenario.n);
  for (std::size_t i = 0; i < scenario.n; ++i) {
    const bool legit = scenario.truth[i] != 0;
    bool bit;
    if (legit) {
      bit = event ? !rng.bernoulli(scenario.sensors.p_md_l) : rng.bernoulli(scenario.sensors.p_fa_l);
    } else {
      bit = event ? !rng.bernoulli(scenario.attack.p_md_m_raw) : rng.bernoulli(scenario.attack.p_fa_m_raw);
      if (rng.bernoulli(scenario.attack.p_f)) bit = !bit;
    }
    trial.y[i] = bit ? 1 : 0;
    trial.a[i] = sample_symbol(legit ? scenario.trust.pmf_legit() : scenario.trust.pmf_malicious(), rng);
  }
  return trial;
}

BitVector place_malicious(std::size_t n, std::size_t malicious, RandomStream& rng) {
  if (malicious > n) throw ValidationError("more malicious robots than robots");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  BitVector truth(n, 1);
  for (std::size_t k = 0; k < malicious; ++k) truth[order[k]] = 0;
  return truth;
}

std::uint64_t trial_digest(const Trial& trial, std::uint64_t seed) {
  std::uint64_t h = mix(seed, static_cast<std::uint64_t>(to_int(trial.xi)));
  for (std::size_t i = 0; i < trial.y.size(); ++i) {
    h = mix(h, (static_cast<std::uint64_t>(trial.a[i]) << 1) | trial.y[i]);
  }
  return h;
}

ExperimentResult run_point(const ExperimentConfig& config, const Scenario& scenario, double m_bar,
                           std::uint64_t point) {
  scenario.validate();
  const double gamma_ts = scenario.priors.log_ratio();
  const double fraction = static_cast<double>(scenario.malicious_count()) / static_cast<double>(scenario.n);

  std::optional<ThresholdChoice> thresholds;
  std::optional<CandidateSet> candidates;
  std::vector<MethodRunner> runners;
  for (const auto& spec : config.methods) {
    MethodRunner r{spec, {}, std::nullopt, {}};
    r.result.method = spec.name();
    r.result.malicious_fraction = fraction;
    if (spec.kind == MethodKind::kTwoStage && !thresholds) {
      const auto ts_config = TwoStageConfig::from_priors(scenario.priors, m_bar, config.delta_p);
      thresholds = optimize_thresholds(scenario.trust, scenario.sensors, ts_config, scenario.n);
    }
    if (spec.kind == MethodKind::kAglrt && !candidates) candidates = candidate_set(scenario.n);
    if (spec.kind == MethodKind::kReputation) r.reputation.emplace(scenario.n, spec.window, spec.eta);
    runners.push_back(std::move(r));
  }

  RandomStream trial_rng = RandomStream::derive(config.seed, "trials", point);
  RandomStream tie_rng = RandomStream::derive(config.seed, "two-stage-ties", point);

  for (std::size_t k = 0; k < config.trials; ++k) {
    const Trial trial = sample_trial(scenario, trial_rng);
    const std::uint64_t digest = trial_digest(trial, k);
    for (auto& r : runners) {
      const auto start = std::chrono::steady_clock::now();
      DecisionOutcome outcome;
      switch (r.spec.kind) {
        case MethodKind::kTwoStage:
          outcome = run_2sa(trial, *thresholds, scenario.trust, scenario.sensors, gamma_ts, tie_rng);
          break;
        case MethodKind::kAglrt:
          outcome = aglrt_evaluate(trial, scenario.trust, scenario.sensors, scenario.priors, *candidates).outcome;
          break;
        case MethodKind::kOracle:
          outcome = oracle_decide(trial, scenario.sensors, gamma_ts);
          break;
        case MethodKind::kOblivious:
          outcome = oblivious_decide(trial, scenario.sensors, gamma_ts);
          break;
        case MethodKind::kReputation:
          outcome = reputation_step(trial, *r.reputation, scenario.sensors, gamma_ts);
          break;
      }
      r.elapsed += std::chrono::steady_clock::now() - start;

      MethodResult& res = r.result;
      res.input_digest = mix(res.input_digest, digest);
      ++res.trials;
      const bool wrong = outcome.hypothesis != trial.xi;
      if (trial.xi == Hypothesis::kH0) {
        ++res.h0_trials;
        if (wrong) ++res.false_alarms;
      } else {
        ++res.h1_trials;
        if (wrong) ++res.missed_detections;
      }
      if (wrong) ++res.errors;
    }
  }

  ExperimentResult out;
  out.malicious_fraction = fraction;
  out.malicious_count = scenario.malicious_count();
  out.seed = config.seed;
  for (auto& r : runners) {
    MethodResult& res = r.result;
    const auto ratio = [](std::size_t num, std::size_t den) {
      return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    res.error_rate = ratio(res.errors, res.trials);
    res.fa_rate = ratio(res.false_alarms, res.h0_trials);
    res.md_rate = ratio(res.missed_detections, res.h1_trials);
    res.mean_latency_us =
        res.trials == 0 ? 0.0 : std::chrono::duration<double, std::micro>(r.elapsed).count() / res.trials;
    out.methods.push_back(std::move(res));
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_point(config, config.scenario, config.m_bar, 0);
}

std::vector<ExperimentResult> sweep_malicious_fraction(const ExperimentConfig& config) {
  config.validate();
  if (!config.sweep) throw ValidationError("sweep requested but no sweep fractions configured");
  std::vector<ExperimentResult> results;
  const auto& fractions = *config.sweep;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    Scenario scenario = config.scenario;
    const std::size_t malicious = malicious_count_for(fractions[k], scenario.n);
    RandomStream placement = RandomStream::derive(config.seed, "placement", k);
    scenario.truth = place_malicious(scenario.n, malicious, placement);
    ExperimentResult point = run_point(config, scenario, fractions[k], k);
    point.malicious_fraction = fractions[k];
    for (auto& m : point.methods) m.malicious_fraction = fractions[k];
    results.push_back(std::move(point));
  }
  return results;
}

}  // namespace rht
