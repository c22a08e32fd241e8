#include "rht/baselines.hpp"

#include <numeric>

#include "rht/stats.hpp"
#include "rht/two_stage.hpp"

namespace rht {

namespace {

DecisionOutcome fuse(const Trial& trial, BitVector trusted, const LegitimateSensorModel& sensors, double gamma_ts) {
  const FusionDecision fused = decide_hypothesis(trial.y, trusted, sensors, gamma_ts);
  DecisionOutcome out;
  out.hypothesis = fused.hypothesis;
  out.t_hat = std::move(trusted);
  out.diagnostics["statistic"] = fused.statistic;
  out.diagnostics["trusted_count"] = static_cast<double>(fused.trusted);
  return out;
}

}  // namespace

DecisionOutcome oracle_decide(const Trial& trial, const LegitimateSensorModel& sensors, double gamma_ts) {
  if (trial.truth.size() != trial.y.size()) throw DomainError("oracle_decide: trial carries no truth vector");
  return fuse(trial, trial.truth, sensors, gamma_ts);
}

DecisionOutcome oblivious_decide(const Trial& trial, const LegitimateSensorModel& sensors, double gamma_ts) {
  DecisionOutcome out = fuse(trial, BitVector(trial.y.size(), 1), sensors, gamma_ts);
  out.t_hat.reset();
  return out;
}

ReputationState::ReputationState(std::size_t robots, std::size_t window, double threshold)
    : window_(window), threshold_(threshold), history_(robots) {
  if (window == 0) throw ValidationError("reputation window T must be at least 1");
  if (!(threshold > 0.0 && threshold < static_cast<double>(window))) {
    throw ValidationError("reputation threshold eta must satisfy 0 < eta < T");
  }
}

std::size_t ReputationState::disagreements(std::size_t robot) const {
  const auto& h = history_.at(robot);
  return static_cast<std::size_t>(std::accumulate(h.begin(), h.end(), 0));
}

bool ReputationState::excluded(std::size_t robot) const {
  return static_cast<double>(disagreements(robot)) >= threshold_;
}

BitVector ReputationState::included() const {
  BitVector out(history_.size());
  for (std::size_t i = 0; i < history_.size(); ++i) out[i] = excluded(i) ? 0 : 1;
  return out;
}

void ReputationState::record(std::size_t robot, bool disagreed) {
  auto& h = history_.at(robot);
  h.push_back(disagreed ? 1 : 0);
  if (h.size() > window_) h.pop_front();
}

DecisionOutcome reputation_step(const Trial& trial, ReputationState& state, const LegitimateSensorModel& sensors,
                                double gamma_ts) {
  if (state.robots() != trial.y.size()) throw DomainError("reputation state robot count does not match trial");
  DecisionOutcome out = fuse(trial, state.included(), sensors, gamma_ts);
  const std::uint8_t decided = static_cast<std::uint8_t>(to_int(out.hypothesis));
  for (std::size_t i = 0; i < trial.y.size(); ++i) state.record(i, trial.y[i] != decided);
  return out;
}

std::pair<DecisionOutcome, ReputationState> reputation_decide(const Trial& trial, ReputationState state,
                                                              const LegitimateSensorModel& sensors, double gamma_ts) {
  DecisionOutcome out = reputation_step(trial, state, sensors, gamma_ts);
  return {std::move(out), std::move(state)};
}

}  // namespace rht
