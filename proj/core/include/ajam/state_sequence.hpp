#pragma once

#include <array>
#include <deque>

#include "ajam/arena.hpp"

namespace ajam {

constexpr int kSequenceSize = 36;  // reshaped to 1x6x6
using StateVector = std::array<double, kSequenceSize>;

// Rolling window of the last W (state, strategy) pairs. Each pair encodes as
// (sinr_level/xi, psi/n_patterns, power_level/L, move); the current state
// follows as (sinr_level/xi, psi/n_patterns) and the rest is zero. Windows
// wider than 8 pairs keep only the newest 8.
class StateHistory {
 public:
  static constexpr int kMaxPairs = (kSequenceSize - 2) / 4;

  StateHistory(int window, ArenaShape shape);

  int window() const { return window_; }
  int effective_window() const { return window_ < kMaxPairs ? window_ : kMaxPairs; }
  int size() const { return static_cast<int>(pairs_.size()); }

  void push(const ObsState& state, const Strategy& strategy);
  StateVector encode(const ObsState& current) const;
  void clear() { pairs_.clear(); }

 private:
  struct Pair {
    ObsState state;
    Strategy strategy;
  };

  int window_;
  ArenaShape shape_;
  std::deque<Pair> pairs_;
};

}  // namespace ajam
