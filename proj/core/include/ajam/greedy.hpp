#pragma once

#include <vector>

#include "ajam/agent.hpp"
#include "ajam/rng.hpp"

namespace ajam {

// Running average utility per strategy.
struct GreedyScores {
  std::vector<double> average;
  std::vector<long> count;

  explicit GreedyScores(int n_strategies)
      : average(n_strategies, 0.0), count(n_strategies, 0) {}

  void record(int strategy, double utility);
};

int greedy_select(const GreedyScores& scores, double epsilon, Rng& rng);

class GreedyAgent : public Agent {
 public:
  // With `explore` false the agent always takes the best average.
  GreedyAgent(ArenaShape shape, LearnSchedule schedule, bool explore, std::uint64_t seed);

  std::string name() const override { return "greedy"; }
  void play(Arena& arena, std::int64_t slots) override;

  const GreedyScores& scores() const { return scores_; }

 private:
  ArenaShape shape_;
  GreedyScores scores_;
  LearnSchedule schedule_;
  bool explore_;
  Rng rng_;
  std::int64_t clock_ = 0;
};

}  // namespace ajam
