#include "ajam/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ajam/policies.hpp"

namespace ajam {

using tinynet::Matrix;
using tinynet::Network;

void DqnConfig::validate() const {
  auto fail = [](const char* field, const char* msg) {
    throw std::invalid_argument(std::string(field) + ": " + msg);
  };
  if (window < 0) fail("dqn.window", "must be >= 0");
  if (minibatch < 1) fail("dqn.minibatch", "must be >= 1");
  if (replay_capacity < 1) fail("dqn.replay_capacity", "must be >= 1");
  if (hotboot_episodes < 0) fail("dqn.hotboot_episodes", "must be >= 0");
  if (hotboot_slots < 1) fail("dqn.hotboot_slots", "must be >= 1");
  if (explore_slots < 1) fail("dqn.explore_slots", "must be >= 1");
  if (n_macros < 0) fail("dqn.n_macros", "must be >= 0");
  if (macro_len < 1) fail("dqn.macro_len", "must be >= 1");
  if (!(schedule.sgd_scale > 0)) fail("dqn.sgd_scale", "must be > 0");
  if (!(max_grad_norm >= 0) || !std::isfinite(max_grad_norm)) fail("dqn.max_grad_norm", "must be >= 0");
}

int dqn_act(Network& net, const StateVector& seq, std::int64_t decision, int window, double epsilon,
            int n_primitive, Rng& rng) {
  if (decision < window) return uniform_int(rng, 0, n_primitive - 1);
  const Matrix q = net.evaluate(Eigen::Map<const Matrix>(seq.data(), 1, kSequenceSize));
  return epsilon_greedy(std::span<const double>(q.data(), static_cast<std::size_t>(q.size())), epsilon,
                        rng);
}

TrainStats dqn_train_step(Network& net, const ReplayPool& pool, double gamma,
                          const tinynet::SgdConfig& sgd, int n_primitive, Rng& rng) {
  if (pool.empty()) throw std::logic_error("training on an empty replay pool");
  const int batch = sgd.minibatch;
  Matrix seqs(batch, kSequenceSize);
  Matrix nexts(batch, kSequenceSize);
  std::vector<const Experience*> picked(batch);
  for (int d = 0; d < batch; ++d) {
    const Experience& e = pool.sample(rng);
    picked[d] = &e;
    std::copy(e.seq.begin(), e.seq.end(), seqs.row(d).data());
    std::copy(e.next_seq.begin(), e.next_seq.end(), nexts.row(d).data());
  }

  const Matrix next_q = net.evaluate(nexts);
  std::vector<double> targets(batch);
  for (int d = 0; d < batch; ++d) {
    const double best = next_q.row(d).head(n_primitive).maxCoeff();
    targets[d] = bellman_target(picked[d]->reward, gamma, picked[d]->span, best);
  }

  const Matrix& q = net.forward_batch(seqs);
  Matrix grad = Matrix::Zero(batch, q.cols());
  TrainStats stats;
  for (int d = 0; d < batch; ++d) {
    const int a = picked[d]->action;
    const double err = q(d, a) - targets[d];
    grad(d, a) = 2.0 * err / batch;
    stats.mean_squared_error += err * err / batch;
  }
  net.backward(grad);
  net.sgd_step(sgd);
  return stats;
}

MacroResult run_macro(Arena& arena, const MacroAction& macro, StateHistory& history,
                      ObsState& state, double gamma, std::int64_t max_slots) {
  MacroResult r;
  for (const Strategy& x : macro.steps) {
    if (r.slots >= max_slots) break;
    const StepFeedback fb = arena.step(x);
    history.push(state, x);
    state = fb.next;
    r.rewards.push_back(fb.reward);
    ++r.slots;
  }
  r.cumulative = discounted_return(r.rewards, gamma);
  r.next_state = state;
  r.next_seq = history.encode(state);
  return r;
}

std::vector<MacroAction> build_macros(Arena& arena, int explore_slots, int n_macros, int macro_len,
                                      Rng& rng) {
  const ArenaShape shape = arena.shape();
  const int n = shape.n_strategies();
  if (n_macros > n) {
    throw std::invalid_argument("cannot build " + std::to_string(n_macros) + " macros from " +
                                std::to_string(n) + " strategies");
  }
  if (explore_slots < 1) throw std::invalid_argument("macro exploration needs >= 1 slot");
  std::vector<double> best(n, 0.0);
  for (int t = 0; t < explore_slots; ++t) {
    const int a = uniform_int(rng, 0, n - 1);
    const StepFeedback fb = arena.step(strategy_from_index(a, shape.power_levels));
    best[a] = std::max(best[a], fb.reward);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return best[a] > best[b]; });

  std::vector<MacroAction> macros(n_macros);
  for (int i = 0; i < n_macros; ++i) {
    macros[i].steps.assign(macro_len, strategy_from_index(order[i], shape.power_levels));
  }
  return macros;
}

void save_macros(std::ostream& os, std::span<const MacroAction> macros, int head_size) {
  const std::size_t len = macros.empty() ? 0 : macros.front().steps.size();
  os << "macros 1 " << head_size << ' ' << macros.size() << ' ' << len << '\n';
  for (const auto& m : macros) {
    const Strategy& x = m.steps.front();
    os << x.power_level << ' ' << (x.move ? 1 : 0) << '\n';
  }
}

std::vector<MacroAction> load_macros(std::istream& is, int* head_size) {
  std::string magic;
  int version = 0, head = 0;
  std::size_t count = 0, len = 0;
  if (!(is >> magic >> version >> head >> count >> len) || magic != "macros" || version != 1) {
    throw std::runtime_error("macros: bad header");
  }
  std::vector<MacroAction> out(count);
  for (auto& m : out) {
    Strategy x;
    int move = 0;
    if (!(is >> x.power_level >> move)) throw std::runtime_error("macros: truncated");
    x.move = move != 0;
    m.steps.assign(len, x);
  }
  if (head_size) *head_size = head;
  return out;
}

DqnLearner::DqnLearner(Network net, const DqnConfig& cfg, ArenaShape shape, std::uint64_t seed)
    : net_(std::move(net)), cfg_(cfg), shape_(shape), rng_(seed) {
  cfg_.validate();
}

void DqnLearner::install_macros(std::vector<MacroAction> macros, Rng& init_rng) {
  macros_ = std::move(macros);
  net_.resize_head(n_primitive() + static_cast<int>(macros_.size()), init_rng);
}

void DqnLearner::run(Arena& arena, std::int64_t slots, ReplayPool& pool) {
  StateHistory history(cfg_.window, shape_);
  ObsState state = arena.observe();
  const int n_prim = n_primitive();
  std::int64_t decision = 0;
  std::int64_t t = 0;
  while (t < slots) {
    const std::int64_t k = clock_;
    const StateVector seq = history.encode(state);
    const int a =
        dqn_act(net_, seq, decision, cfg_.window, cfg_.schedule.epsilon.at(k), n_prim, rng_);
    max_action_ = std::max(max_action_, a);
    const double gamma = cfg_.schedule.gamma.at(k);
    if (a < n_prim) {
      const Strategy x = strategy_from_index(a, shape_.power_levels);
      const StepFeedback fb = arena.step(x);
      history.push(state, x);
      state = fb.next;
      pool.add({seq, a, fb.reward, history.encode(state), 1});
      t += 1;
      clock_ += 1;
    } else {
      const MacroResult r =
          run_macro(arena, macros_.at(a - n_prim), history, state, gamma, slots - t);
      if (r.slots == static_cast<int>(macros_[a - n_prim].steps.size())) {
        pool.add({seq, a, r.cumulative, r.next_seq, r.slots});
      }
      t += r.slots;
      clock_ += r.slots;
    }
    ++decision;
    ++decisions_;
    if (!pool.empty()) {
      dqn_train_step(net_, pool, gamma, {cfg_.schedule.learning_rate(k), cfg_.minibatch, cfg_.max_grad_norm}, n_prim,
                     rng_);
    }
  }
}

HotbootResult hotboot(const ArenaFactory& factory, int episodes, int slots, const DqnConfig& cfg,
                      ArenaShape shape, std::uint64_t seed) {
  if (episodes < 0 || slots < 1) throw std::invalid_argument("hotboot needs I >= 0 and K >= 1");
  Rng init_rng = make_rng(seed, 1);
  DqnLearner learner(Network::q_network(shape.n_strategies(), init_rng), cfg, shape,
                     derive_seed(seed, 2));
  ReplayPool pool(cfg.replay_capacity);
  HotbootResult result{learner.network(), 0, 0};
  for (int i = 0; i < episodes; ++i) {
    auto arena = factory(i);
    learner.run(*arena, slots, pool);
    result.slots_consumed += slots;
  }
  result.network = learner.network();
  result.clock = learner.clock();
  return result;
}

DqnAgent::DqnAgent(ArenaShape shape, DqnConfig cfg, std::uint64_t seed)
    : cfg_(cfg),
      learner_(
          [&] {
            Rng init = make_rng(seed, 1);
            return Network::q_network(shape.n_strategies(), init);
          }(),
          cfg, shape, derive_seed(seed, 2)),
      pool_(cfg.replay_capacity) {}

void DqnAgent::play(Arena& arena, std::int64_t slots) { learner_.run(arena, slots, pool_); }

FastDqnAgent::FastDqnAgent(ArenaShape shape, DqnConfig cfg, Network pretrained, std::int64_t clock,
                           std::uint64_t seed)
    : cfg_(cfg),
      learner_(std::move(pretrained), cfg, shape, derive_seed(seed, 2)),
      pool_(cfg.replay_capacity),
      rng_(make_rng(seed, 3)) {
  if (learner_.network().output_size() != shape.n_strategies()) {
    throw std::invalid_argument("pretrained network head does not match the strategy set");
  }
  learner_.set_clock(clock);
}

void FastDqnAgent::play(Arena& arena, std::int64_t slots) {
  std::int64_t remaining = slots;
  if (!macros_built_) {
    const int explore = static_cast<int>(std::min<std::int64_t>(cfg_.explore_slots, remaining));
    if (explore >= 1) {
      learner_.install_macros(
          build_macros(arena, explore, cfg_.n_macros, cfg_.macro_len, rng_), rng_);
      macros_built_ = true;
      remaining -= explore;
    }
  }
  learner_.run(arena, remaining, pool_);
}

}  // namespace ajam
