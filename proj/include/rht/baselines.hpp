#pragma once

#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

#include "rht/models.hpp"

namespace rht {

/// Decides over the robots with t_i = 1; the lower bound on achievable error.
DecisionOutcome oracle_decide(const Trial& trial, const LegitimateSensorModel& sensors, double gamma_ts);

/// Decides over every robot as if all were legitimate.
DecisionOutcome oblivious_decide(const Trial& trial, const LegitimateSensorModel& sensors, double gamma_ts);

/// Rolling per-robot record of disagreements with the fusion center's own
/// decisions over the last `window` tests.
class ReputationState {
 public:
  ReputationState(std::size_t robots, std::size_t window, double threshold);

  std::size_t window() const { return window_; }
  double threshold() const { return threshold_; }
  std::size_t robots() const { return history_.size(); }

  std::size_t disagreements(std::size_t robot) const;
  /// A robot is excluded once its windowed disagreement count reaches the threshold.
  bool excluded(std::size_t robot) const;
  BitVector included() const;
  void record(std::size_t robot, bool disagreed);

 private:
  std::size_t window_;
  double threshold_;
  std::vector<std::deque<std::uint8_t>> history_;
};

/// Reputation baseline: fuse over robots that are not excluded by their history,
/// then append each robot's disagreement with the decision just made.
std::pair<DecisionOutcome, ReputationState> reputation_decide(const Trial& trial, ReputationState state,
                                                              const LegitimateSensorModel& sensors, double gamma_ts);

/// In-place variant used by the simulator.
DecisionOutcome reputation_step(const Trial& trial, ReputationState& state, const LegitimateSensorModel& sensors,
                                double gamma_ts);

}  // namespace rht
