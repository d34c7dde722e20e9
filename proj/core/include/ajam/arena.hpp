#pragma once

#include <cstdint>

#include "ajam/env.hpp"

namespace ajam {

// What the device observes at the start of a slot: the quantized SINR of the
// previous slot and the pattern index announced for this slot.
struct ObsState {
  int sinr_level = 0;     // [0, xi - 1]
  int pattern_index = 1;  // [1, n_patterns]

  friend bool operator==(const ObsState&, const ObsState&) = default;
};

struct ArenaShape {
  int power_levels = 16;
  int sinr_levels = 16;
  int n_patterns = 10;

  int n_strategies() const { return 2 * (power_levels + 1); }
  int n_states() const { return sinr_levels * n_patterns; }
};

struct StepFeedback {
  SlotOutcome outcome;
  double reward = 0.0;  // utility as computed by the device from its feedback
  ObsState next;
};

// A game instance the agents drive one slot at a time.
class Arena {
 public:
  virtual ~Arena() = default;

  virtual ArenaShape shape() const = 0;
  virtual ObsState observe() const = 0;
  virtual StepFeedback step(const Strategy& strategy) = 0;
  virtual std::int64_t slot() const = 0;
};

}  // namespace ajam
