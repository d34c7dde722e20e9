#include "ajam/state_sequence.hpp"

#include <stdexcept>

namespace ajam {

StateHistory::StateHistory(int window, ArenaShape shape) : window_(window), shape_(shape) {
  if (window_ < 0) throw std::invalid_argument("history window must be >= 0");
}

void StateHistory::push(const ObsState& state, const Strategy& strategy) {
  if (effective_window() == 0) return;
  pairs_.push_back({state, strategy});
  while (static_cast<int>(pairs_.size()) > effective_window()) pairs_.pop_front();
}

StateVector StateHistory::encode(const ObsState& current) const {
  StateVector v{};
  const double xi = shape_.sinr_levels;
  const double patterns = shape_.n_patterns;
  const double levels = shape_.power_levels;
  // Oldest pair first; missing history stays zero at the front.
  std::size_t pos = static_cast<std::size_t>(effective_window() - size()) * 4;
  for (const Pair& p : pairs_) {
    v[pos++] = p.state.sinr_level / xi;
    v[pos++] = p.state.pattern_index / patterns;
    v[pos++] = p.strategy.power_level / levels;
    v[pos++] = p.strategy.move ? 1.0 : 0.0;
  }
  pos = static_cast<std::size_t>(effective_window()) * 4;
  v[pos++] = current.sinr_level / xi;
  v[pos++] = current.pattern_index / patterns;
  return v;
}

}  // namespace ajam
