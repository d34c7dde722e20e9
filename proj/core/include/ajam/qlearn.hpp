#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ajam/agent.hpp"
#include "ajam/rng.hpp"

namespace ajam {

class QTable {
 public:
  explicit QTable(ArenaShape shape);

  const ArenaShape& shape() const { return shape_; }
  int n_states() const { return shape_.n_states(); }
  int n_actions() const { return shape_.n_strategies(); }
  int state_index(const ObsState& s) const;

  double q(const ObsState& s, int action) const;
  double& q(const ObsState& s, int action);
  std::span<const double> row(const ObsState& s) const;
  double v(const ObsState& s) const { return state_values_[state_index(s)]; }
  double& v(const ObsState& s) { return state_values_[state_index(s)]; }

  // Text dump: header "qtable 1 <xi> <patterns> <L>", then one line per state
  // "<sinr_level> <psi> <V> <Q_0> ... <Q_{2L+1}>".
  void save(std::ostream& os) const;
  static QTable load(std::istream& is);

 private:
  ArenaShape shape_;
  std::vector<double> values_;
  std::vector<double> state_values_;
};

// Q(s,x) <- alpha (u + gamma V(s')) + (1 - alpha) Q(s,x); V(s) <- max Q(s,.).
void q_update(QTable& table, const ObsState& s, int action, double utility, const ObsState& next,
              double alpha, double gamma);

class QLearningAgent : public Agent {
 public:
  QLearningAgent(ArenaShape shape, LearnSchedule schedule, std::uint64_t seed);

  std::string name() const override { return "qlearn"; }
  void play(Arena& arena, std::int64_t slots) override;

  const QTable& table() const { return table_; }
  // Greedy action for a state (epsilon = 0).
  int greedy_action(const ObsState& s) const;

 private:
  QTable table_;
  LearnSchedule schedule_;
  Rng rng_;
  std::int64_t clock_ = 0;
};

}  // namespace ajam
