#pragma once

#include <cstdint>
#include <string>

#include "ajam/arena.hpp"
#include "ajam/schedule.hpp"

namespace ajam {

// A defender policy. `play` drives the arena for exactly `slots` slots.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string name() const = 0;
  virtual void play(Arena& arena, std::int64_t slots) = 0;
  // Slots consumed before learning proper starts that should be kept out of
  // the reported curves (the fast DQN's macro exploration).
  virtual std::int64_t prelude_slots() const { return 0; }
};

}  // namespace ajam
