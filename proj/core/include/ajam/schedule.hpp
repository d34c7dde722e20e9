#pragma once

#include <cstdint>

namespace ajam {

// Linear ramp from `start` to `end` over the first `slots` slots, then held.
struct Ramp {
  double start = 0.0;
  double end = 0.0;
  int slots = 0;

  double at(std::int64_t slot) const;
};

// Exploration / learning-rate / discount annealing shared by all agents.
struct LearnSchedule {
  Ramp epsilon{0.5, 0.05, 300};
  Ramp alpha{0.7, 0.5, 300};
  Ramp gamma{0.5, 0.7, 300};
  // CNN step size = sgd_scale * alpha(k).
  double sgd_scale = 0.01;

  double learning_rate(std::int64_t slot) const { return sgd_scale * alpha.at(slot); }
};

}  // namespace ajam
