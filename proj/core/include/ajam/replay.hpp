#pragma once

#include <cstddef>
#include <vector>

#include "ajam/rng.hpp"
#include "ajam/state_sequence.hpp"

namespace ajam {

struct Experience {
  StateVector seq{};
  int action = 0;       // primitive strategy index, or 2(L+1) + macro index
  double reward = 0.0;  // u, or the discounted macro return U
  StateVector next_seq{};
  int span = 1;         // 1 for primitives, zeta for macros
};

// Fixed-capacity FIFO memory pool with uniform sampling.
class ReplayPool {
 public:
  explicit ReplayPool(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  void add(Experience e);
  // Uniform draw, with replacement across calls.
  std::size_t sample_index(Rng& rng) const;
  const Experience& sample(Rng& rng) const { return at(sample_index(rng)); }
  // i = 0 is the oldest record still held.
  const Experience& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  std::vector<Experience> records_;
  std::size_t head_ = 0;  // oldest record once full
};

}  // namespace ajam
