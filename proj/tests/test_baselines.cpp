#include <doctest.h>

#include <cmath>

#include "rht/baselines.hpp"
#include "rht/simulator.hpp"
#include "rht/two_stage.hpp"

using namespace rht;

namespace {

Trial make_trial(BitVector y, BitVector truth) {
  Trial t;
  t.y = std::move(y);
  t.truth = std::move(truth);
  t.a.assign(t.y.size(), 0);
  return t;
}

const LegitimateSensorModel kSym{0.15, 0.15};

}  // namespace

TEST_CASE("oracle ignores malicious robots") {
  const Trial t = make_trial({0, 0, 1}, {0, 0, 1});
  CHECK(oracle_decide(t, kSym, 0.0).hypothesis == Hypothesis::kH1);
  CHECK(oblivious_decide(t, kSym, 0.0).hypothesis == Hypothesis::kH0);
  CHECK(oracle_decide(t, kSym, 0.0).t_hat == BitVector{0, 0, 1});
}

TEST_CASE("oracle equals oblivious without malicious robots") {
  Scenario sc;
  sc.n = 7;
  sc.truth = BitVector(7, 1);
  sc.sensors = {0.2, 0.1};
  sc.priors = {0.4, 0.6};
  RandomStream rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Trial t = sample_trial(sc, rng);
    CHECK(oracle_decide(t, sc.sensors, sc.priors.log_ratio()).hypothesis ==
          oblivious_decide(t, sc.sensors, sc.priors.log_ratio()).hypothesis);
  }
}

TEST_CASE("oracle with an all-malicious network follows the tie rule") {
  const Trial t = make_trial({0, 0, 0}, {0, 0, 0});
  CHECK(oracle_decide(t, kSym, -0.5).hypothesis == Hypothesis::kH1);
  CHECK(oracle_decide(t, kSym, 0.5).hypothesis == Hypothesis::kH0);
}

TEST_CASE("oblivious examples") {
  const Trial ones = make_trial({1, 1, 1}, {1, 1, 1});
  const auto out = oblivious_decide(ones, kSym, 0.0);
  CHECK(out.hypothesis == Hypothesis::kH1);
  CHECK_FALSE(out.t_hat.has_value());
}

TEST_CASE("oblivious fusion beats a single sensor without adversaries") {
  Scenario sc;
  sc.n = 15;
  sc.truth = BitVector(15, 1);
  sc.sensors = {0.2, 0.2};
  RandomStream rng(12);
  std::size_t fused_wrong = 0, single_wrong = 0;
  const std::size_t trials = 20000;
  for (std::size_t i = 0; i < trials; ++i) {
    const Trial t = sample_trial(sc, rng);
    fused_wrong += oblivious_decide(t, sc.sensors, 0.0).hypothesis != t.xi;
    single_wrong += hypothesis_from_bit(t.y[0]) != t.xi;
  }
  CHECK(fused_wrong * 10 < single_wrong);
}

TEST_CASE("reputation state validation") {
  CHECK_THROWS_AS(ReputationState(3, 0, 0.5), ValidationError);
  CHECK_THROWS_AS(ReputationState(3, 5, 5.0), ValidationError);
  CHECK_THROWS_AS(ReputationState(3, 5, 0.0), ValidationError);
  CHECK_NOTHROW(ReputationState(3, 5, 2.5));
}

TEST_CASE("reputation with T=1, eta=0.5 excludes exactly the last dissenters") {
  ReputationState state(3, 1, 0.5);
  CHECK(state.included() == BitVector{1, 1, 1});
  auto [first, s1] = reputation_decide(make_trial({1, 1, 0}, {1, 1, 1}), state, kSym, 0.0);
  CHECK(first.hypothesis == Hypothesis::kH1);
  CHECK(first.t_hat == BitVector{1, 1, 1});
  CHECK(s1.included() == BitVector{1, 1, 0});
  // Robot 2 is now ignored; robots 0 and 1 disagree with each other, S_N = 0 -> H1.
  auto [second, s2] = reputation_decide(make_trial({1, 0, 0}, {1, 1, 1}), s1, kSym, 0.0);
  CHECK(second.t_hat == BitVector{1, 1, 0});
  CHECK(second.hypothesis == Hypothesis::kH1);
  CHECK(s2.included() == BitVector{1, 0, 0});
  // The original state is untouched.
  CHECK(state.included() == BitVector{1, 1, 1});
}

TEST_CASE("reputation windowed counts with fractional eta") {
  ReputationState state(1, 5, 2.5);
  for (bool d : {true, true}) state.record(0, d);
  CHECK_FALSE(state.excluded(0));
  state.record(0, true);
  CHECK(state.excluded(0));
  CHECK(state.disagreements(0) == 3);
  // Agreements push the oldest disagreement out of the window and the robot is re-admitted.
  for (int i = 0; i < 3; ++i) state.record(0, false);
  CHECK(state.disagreements(0) == 2);
  CHECK_FALSE(state.excluded(0));
}

TEST_CASE("reputation includes everyone while all robots agree") {
  ReputationState state(4, 5, 2.5);
  for (int i = 0; i < 10; ++i) {
    const Trial t = make_trial({1, 1, 1, 1}, {1, 1, 1, 1});
    const auto out = reputation_step(t, state, kSym, 0.0);
    CHECK(out.hypothesis == Hypothesis::kH1);
    CHECK(state.included() == BitVector{1, 1, 1, 1});
  }
}

TEST_CASE("baselines are deterministic given the trial stream") {
  Scenario sc;
  sc.n = 8;
  sc.truth = {1, 0, 1, 0, 0, 1, 0, 1};
  sc.sensors = {0.15, 0.15};
  sc.attack = {0.0, 0.0, 0.99};
  RandomStream rng_a(5), rng_b(5);
  ReputationState sa(8, 5, 2.5), sb(8, 5, 2.5);
  for (int i = 0; i < 500; ++i) {
    const Trial ta = sample_trial(sc, rng_a), tb = sample_trial(sc, rng_b);
    CHECK(reputation_step(ta, sa, sc.sensors, 0.0).hypothesis == reputation_step(tb, sb, sc.sensors, 0.0).hypothesis);
    CHECK(oracle_decide(ta, sc.sensors, 0.0).hypothesis == oracle_decide(tb, sc.sensors, 0.0).hypothesis);
  }
}

TEST_CASE("oracle has the lowest error over a long paired stream") {
  ExperimentConfig cfg;
  cfg.scenario.n = 10;
  cfg.scenario.truth = {1, 0, 1, 0, 1, 0, 0, 1, 1, 0};
  cfg.scenario.sensors = {0.15, 0.15};
  cfg.scenario.attack = {0.0, 0.0, 0.99};
  cfg.trials = 20000;
  cfg.seed = 77;
  cfg.m_bar = 0.5;
  for (const char* m : {"2SA", "A-GLRT", "Oracle", "Oblivious", "Baseline:1:0.5", "Baseline:5:2.5"}) {
    cfg.methods.push_back(MethodSpec::parse(m));
  }
  const auto res = run_experiment(cfg);
  const double oracle = res.method("Oracle").error_rate;
  for (const auto& m : res.methods) CHECK(oracle <= m.error_rate);
}
