#include "ajam/qlearn.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ajam/policies.hpp"

namespace ajam {

QTable::QTable(ArenaShape shape)
    : shape_(shape),
      values_(static_cast<std::size_t>(shape.n_states()) * shape.n_strategies(), 0.0),
      state_values_(shape.n_states(), 0.0) {}

int QTable::state_index(const ObsState& s) const {
  if (s.sinr_level < 0 || s.sinr_level >= shape_.sinr_levels || s.pattern_index < 1 ||
      s.pattern_index > shape_.n_patterns) {
    throw std::out_of_range("observed state out of range");
  }
  return (s.pattern_index - 1) * shape_.sinr_levels + s.sinr_level;
}

double QTable::q(const ObsState& s, int action) const {
  return values_[static_cast<std::size_t>(state_index(s)) * n_actions() + action];
}

double& QTable::q(const ObsState& s, int action) {
  return values_[static_cast<std::size_t>(state_index(s)) * n_actions() + action];
}

std::span<const double> QTable::row(const ObsState& s) const {
  return {values_.data() + static_cast<std::size_t>(state_index(s)) * n_actions(),
          static_cast<std::size_t>(n_actions())};
}

void QTable::save(std::ostream& os) const {
  const auto precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "qtable 1 " << shape_.sinr_levels << ' ' << shape_.n_patterns << ' ' << shape_.power_levels
     << '\n';
  for (int psi = 1; psi <= shape_.n_patterns; ++psi) {
    for (int level = 0; level < shape_.sinr_levels; ++level) {
      const ObsState s{level, psi};
      os << level << ' ' << psi << ' ' << v(s);
      for (double q : row(s)) os << ' ' << q;
      os << '\n';
    }
  }
  os.precision(precision);
}

QTable QTable::load(std::istream& is) {
  std::string magic;
  int version = 0;
  ArenaShape shape;
  if (!(is >> magic >> version >> shape.sinr_levels >> shape.n_patterns >> shape.power_levels) ||
      magic != "qtable" || version != 1) {
    throw std::runtime_error("qtable: bad header");
  }
  QTable t(shape);
  for (int i = 0; i < shape.n_states(); ++i) {
    ObsState s;
    if (!(is >> s.sinr_level >> s.pattern_index)) throw std::runtime_error("qtable: truncated");
    is >> t.v(s);
    for (int a = 0; a < t.n_actions(); ++a) is >> t.q(s, a);
    if (!is) throw std::runtime_error("qtable: truncated");
  }
  return t;
}

void q_update(QTable& table, const ObsState& s, int action, double utility, const ObsState& next,
              double alpha, double gamma) {
  double& q = table.q(s, action);
  q = alpha * (utility + gamma * table.v(next)) + (1.0 - alpha) * q;
  const auto row = table.row(s);
  table.v(s) = *std::max_element(row.begin(), row.end());
}

QLearningAgent::QLearningAgent(ArenaShape shape, LearnSchedule schedule, std::uint64_t seed)
    : table_(shape), schedule_(schedule), rng_(seed) {}

int QLearningAgent::greedy_action(const ObsState& s) const { return argmax(table_.row(s)); }

void QLearningAgent::play(Arena& arena, std::int64_t slots) {
  const int levels = table_.shape().power_levels;
  ObsState s = arena.observe();
  for (std::int64_t t = 0; t < slots; ++t, ++clock_) {
    const int a = epsilon_greedy(table_.row(s), schedule_.epsilon.at(clock_), rng_);
    const StepFeedback fb = arena.step(strategy_from_index(a, levels));
    q_update(table_, s, a, fb.reward, fb.next, schedule_.alpha.at(clock_), schedule_.gamma.at(clock_));
    s = fb.next;
  }
}

}  // namespace ajam
