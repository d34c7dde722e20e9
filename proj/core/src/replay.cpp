#include "ajam/replay.hpp"

#include <stdexcept>

namespace ajam {

ReplayPool::ReplayPool(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be >= 1");
  records_.reserve(capacity_ < 4096 ? capacity_ : 4096);
}

void ReplayPool::add(Experience e) {
  if (records_.size() < capacity_) {
    records_.push_back(std::move(e));
    return;
  }
  records_[head_] = std::move(e);
  head_ = (head_ + 1) % capacity_;
}

std::size_t ReplayPool::sample_index(Rng& rng) const {
  if (records_.empty()) throw std::logic_error("sampling from an empty replay pool");
  return std::uniform_int_distribution<std::size_t>(0, records_.size() - 1)(rng);
}

const Experience& ReplayPool::at(std::size_t i) const {
  if (i >= records_.size()) throw std::out_of_range("replay index out of range");
  return records_[(head_ + i) % records_.size()];
}

}  // namespace ajam
