#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ajam/adversary.hpp"
#include "ajam/arena.hpp"
#include "ajam/env.hpp"
#include "ajam/harness/scenario.hpp"

namespace ajam {

struct MetricsRow {
  std::int64_t slot = 0;
  double sinr = 0.0;
  double utility = 0.0;
  int action = 0;  // primitive strategy index played in this slot
  bool moved = false;
  bool silent = false;
};

// One game instance: environment, jammers and the per-slot loop. Slots
// before `record_from` are played but not recorded.
class World : public Arena {
 public:
  World(const Scenario& scenario, std::uint64_t seed);

  ArenaShape shape() const override { return shape_; }
  ObsState observe() const override { return obs_; }
  StepFeedback step(const Strategy& strategy) override;
  std::int64_t slot() const override { return env_.slot(); }

  void record_from(std::int64_t slot) { record_from_ = slot; }
  const std::vector<MetricsRow>& rows() const { return rows_; }
  std::vector<MetricsRow> take_rows() { return std::move(rows_); }

  const Environment& environment() const { return env_; }
  const std::vector<Jammer>& jammers() const { return jammers_; }

 private:
  ArenaShape shape_;
  FeedbackLoss loss_mode_;
  double loss_prob_;
  Environment env_;
  std::vector<Jammer> jammers_;
  Rng loss_rng_;
  std::vector<double> last_activity_;
  int last_node_ = 0;
  ObsState obs_;
  std::int64_t record_from_ = 0;
  std::vector<MetricsRow> rows_;
};

// Patterns for one episode: the scenario's explicit list, or a fresh draw.
std::vector<FrequencyPattern> episode_patterns(const Scenario& scenario, std::uint64_t seed);

}  // namespace ajam
