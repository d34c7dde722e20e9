#pragma once

// Deep Q-network defenders: the plain DQN (history window -> CNN -> Q per
// strategy, experience replay, minibatch SGD) and the fast variant that
// pretrains on emulated games and adds macro-actions.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "ajam/agent.hpp"
#include "ajam/replay.hpp"
#include "ajam/rng.hpp"
#include "ajam/state_sequence.hpp"
#include "ajam/tinynet.hpp"

namespace ajam {

struct DqnConfig {
  int window = 8;  // W
  int minibatch = 32;  // B
  std::size_t replay_capacity = 10000;
  LearnSchedule schedule;
  // Gradient-norm ceiling of each SGD step; 0 disables.
  double max_grad_norm = 100.0;

  int hotboot_episodes = 20;  // I
  int hotboot_slots = 200;  // K
  int explore_slots = 300;  // T
  int n_macros = 4;  // Phi
  int macro_len = 5;  // zeta
  // When false the T exploration slots run before the reported window.
  bool exploration_in_curve = false;

  void validate() const;
};

// zeta repetitions of one strategy.
struct MacroAction {
  std::vector<Strategy> steps;
};

// First `window` decisions are uniform over the primitives; afterwards
// epsilon-greedy over the network output.
int dqn_act(tinynet::Network& net, const StateVector& seq, std::int64_t decision, int window,
            double epsilon, int n_primitive, Rng& rng);

struct TrainStats {
  double mean_squared_error = 0.0;
};

// One minibatch update. Targets use max over the primitive outputs at
// next_seq under the current (pre-update) parameters; the squared error is
// applied only to the taken action's output.
TrainStats dqn_train_step(tinynet::Network& net, const ReplayPool& pool, double gamma,
                          const tinynet::SgdConfig& sgd, int n_primitive, Rng& rng);

struct MacroResult {
  double cumulative = 0.0;  // U
  std::vector<double> rewards;
  ObsState next_state;
  StateVector next_seq{};
  int slots = 0;
};

// Plays the macro's strategies in consecutive slots (at most `max_slots`),
// pushing each (state, strategy) into `history`; `state` is advanced to the
// state after the last slot played.
MacroResult run_macro(Arena& arena, const MacroAction& macro, StateHistory& history,
                      ObsState& state, double gamma, std::int64_t max_slots);

// Plays `explore_slots` uniformly random primitives, keeps the best utility
// seen per strategy (initially 0) and returns the top `n_macros` strategies
// (ties to the lower index) as `macro_len`-long macros.
std::vector<MacroAction> build_macros(Arena& arena, int explore_slots, int n_macros, int macro_len,
                                      Rng& rng);

void save_macros(std::ostream& os, std::span<const MacroAction> macros, int head_size);
std::vector<MacroAction> load_macros(std::istream& is, int* head_size = nullptr);

// The slot loop shared by the DQN, the hotbooting process and the fast DQN.
class DqnLearner {
 public:
  DqnLearner(tinynet::Network net, const DqnConfig& cfg, ArenaShape shape, std::uint64_t seed);

  // Continues the annealing schedules from `clock`.
  void set_clock(std::int64_t clock) { clock_ = clock; }
  std::int64_t clock() const { return clock_; }

  void install_macros(std::vector<MacroAction> macros, Rng& init_rng);
  const std::vector<MacroAction>& macros() const { return macros_; }

  // Plays `slots` slots on `arena`, storing into `pool` and training after
  // every decision.
  void run(Arena& arena, std::int64_t slots, ReplayPool& pool);

  tinynet::Network& network() { return net_; }
  const tinynet::Network& network() const { return net_; }
  int n_primitive() const { return shape_.n_strategies(); }
  std::int64_t decisions() const { return decisions_; }
  // Largest action index taken so far, -1 before the first decision.
  int max_action_taken() const { return max_action_; }

 private:
  tinynet::Network net_;
  DqnConfig cfg_;
  ArenaShape shape_;
  Rng rng_;
  std::vector<MacroAction> macros_;
  std::int64_t clock_ = 0;
  std::int64_t decisions_ = 0;
  int max_action_ = -1;
};

using ArenaFactory = std::function<std::unique_ptr<Arena>(int episode)>;

struct HotbootResult {
  tinynet::Network network;
  std::int64_t slots_consumed = 0;
  std::int64_t clock = 0;  // schedule position reached
};

// Pretrains a fresh Q-network on `episodes` emulated games of `slots` slots
// each, sharing one experience pool and one parameter set across games.
HotbootResult hotboot(const ArenaFactory& factory, int episodes, int slots, const DqnConfig& cfg,
                      ArenaShape shape, std::uint64_t seed);

class DqnAgent : public Agent {
 public:
  DqnAgent(ArenaShape shape, DqnConfig cfg, std::uint64_t seed);

  std::string name() const override { return "dqn"; }
  void play(Arena& arena, std::int64_t slots) override;

  const DqnLearner& learner() const { return learner_; }

 private:
  DqnConfig cfg_;
  DqnLearner learner_;
  ReplayPool pool_;
};

class FastDqnAgent : public Agent {
 public:
  // `pretrained` comes from `hotboot`; `clock` is the schedule position it
  // reached.
  FastDqnAgent(ArenaShape shape, DqnConfig cfg, tinynet::Network pretrained, std::int64_t clock,
               std::uint64_t seed);

  std::string name() const override { return "fastdqn"; }
  void play(Arena& arena, std::int64_t slots) override;
  std::int64_t prelude_slots() const override {
    return cfg_.exploration_in_curve ? 0 : cfg_.explore_slots;
  }

  const DqnLearner& learner() const { return learner_; }

 private:
  DqnConfig cfg_;
  DqnLearner learner_;
  ReplayPool pool_;
  Rng rng_;
  bool macros_built_ = false;
};

}  // namespace ajam
