#include "ajam/greedy.hpp"

#include "ajam/policies.hpp"

namespace ajam {

void GreedyScores::record(int strategy, double utility) {
  long& n = count[strategy];
  ++n;
  average[strategy] += (utility - average[strategy]) / static_cast<double>(n);
}

int greedy_select(const GreedyScores& scores, double epsilon, Rng& rng) {
  return epsilon_greedy(scores.average, epsilon, rng);
}

GreedyAgent::GreedyAgent(ArenaShape shape, LearnSchedule schedule, bool explore, std::uint64_t seed)
    : shape_(shape),
      scores_(shape.n_strategies()),
      schedule_(schedule),
      explore_(explore),
      rng_(seed) {}

void GreedyAgent::play(Arena& arena, std::int64_t slots) {
  for (std::int64_t t = 0; t < slots; ++t, ++clock_) {
    const double eps = explore_ ? schedule_.epsilon.at(clock_) : 0.0;
    const int a = greedy_select(scores_, eps, rng_);
    const StepFeedback fb = arena.step(strategy_from_index(a, shape_.power_levels));
    scores_.record(a, fb.reward);
  }
}

}  // namespace ajam
