#pragma once

// A frozen two-channel game used as a tabular-optimality oracle, plus small
// scripted arenas for agent tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ajam/arena.hpp"
#include "ajam/env.hpp"
#include "ajam/rng.hpp"

namespace ajam::testing {

// Two channels, powers {0, 8}, one location. The serving node picks the
// pattern (pattern p hops to channel p) uniformly each slot. A jammer sits on
// channel 1 forever. Gains are frozen: device (1, 0.25), jammer 1. No PU, no
// interference, no hop cost.
struct MicroSpec {
  static constexpr int kLevels = 16;
  static constexpr double kSinrMax = 8.0;
  static constexpr double kPower = 8.0;
  static constexpr double kNoise = 1.0;
  static constexpr double kJamPower = 8.0;
  static constexpr double kCostTx = 0.2;
  static constexpr double kCostMove = 0.8;
  static constexpr std::array<double, 2> kDeviceGain{1.0, 0.25};

  static ArenaShape shape() { return {1, kLevels, 2}; }

  static EnvConfig env() {
    EnvConfig cfg;
    cfg.n_channels = 2;
    cfg.n_jammers = 1;
    cfg.max_power = kPower;
    cfg.power_levels = 1;
    cfg.noise = kNoise;
    cfg.jam_power = kJamPower;
    cfg.cost_tx_unit = kCostTx;
    cfg.cost_move = kCostMove;
    cfg.cost_hop = 0.0;
    cfg.n_patterns = 2;
    cfg.pattern_len = 1;
    cfg.gain_refresh_period = 0;
    cfg.pu_active = false;
    cfg.sinr_levels = kLevels;
    cfg.sinr_max = kSinrMax;
    return cfg;
  }
};

// Drives the micro game through the library's utility and quantizer, and
// counts state visits from `count_from` onwards.
class MicroArena : public Arena {
 public:
  MicroArena(std::uint64_t seed, std::int64_t count_from)
      : cfg_(MicroSpec::env()), rng_(seed), count_from_(count_from) {
    gains_.n_channels = 2;
    gains_.device = {MicroSpec::kDeviceGain[0], MicroSpec::kDeviceGain[1]};
    gains_.jammer = {1.0, 1.0};
    state_.pattern_index = uniform_int(rng_, 1, 2);
  }

  ArenaShape shape() const override { return MicroSpec::shape(); }
  ObsState observe() const override { return state_; }
  std::int64_t slot() const override { return slot_; }

  StepFeedback step(const Strategy& x) override {
    if (slot_ >= count_from_) ++visits_[{state_.sinr_level, state_.pattern_index}];
    const int channel = state_.pattern_index;
    const Jam jam{0, 1, MicroSpec::kJamPower};
    const SlotOutcome out = step_utility(x, channel, prev_, gains_, std::span<const Jam>(&jam, 1),
                                         true, false, cfg_);
    prev_ = channel;
    ++slot_;
    state_ = {quantize_sinr(out.sinr, cfg_), uniform_int(rng_, 1, 2)};
    return {out, out.utility, state_};
  }

  const std::map<std::pair<int, int>, long>& visits() const { return visits_; }

 private:
  EnvConfig cfg_;
  ChannelGains gains_;
  Rng rng_;
  std::int64_t count_from_;
  std::int64_t slot_ = 0;
  std::optional<int> prev_;
  ObsState state_;
  std::map<std::pair<int, int>, long> visits_;
};

// Exhaustive value iteration over (sinr level, pattern) with the game's
// rewards and transitions written out by hand. Returns Q*[level][pattern-1][a]
// with a = move * 2 + power_level.
inline std::vector<std::array<std::array<double, 4>, 2>> micro_optimal_q(double gamma) {
  constexpr int kL = MicroSpec::kLevels;
  auto sinr_of = [](int pattern, int power_level) {
    const double p = MicroSpec::kPower * power_level;
    if (pattern == 1) return p * 1.0 / (MicroSpec::kNoise + MicroSpec::kJamPower * 1.0);
    return p * MicroSpec::kDeviceGain[1] / MicroSpec::kNoise;
  };
  auto level_of = [](double sinr) {
    const int bin = static_cast<int>(std::floor(sinr / (MicroSpec::kSinrMax / kL)));
    return std::min(bin, kL - 1);
  };
  std::vector<std::array<std::array<double, 4>, 2>> q(kL);
  std::vector<std::array<double, 2>> v(kL, {0.0, 0.0});
  for (int iter = 0; iter < 2000; ++iter) {
    double delta = 0.0;
    for (int lvl = 0; lvl < kL; ++lvl) {
      for (int psi = 1; psi <= 2; ++psi) {
        for (int a = 0; a < 4; ++a) {
          const int power = a % 2;
          const int move = a / 2;
          const double sinr = sinr_of(psi, power);
          const double u = sinr - MicroSpec::kCostTx * MicroSpec::kPower * power -
                           MicroSpec::kCostMove * move;
          const int next = level_of(sinr);
          q[lvl][psi - 1][a] = u + gamma * 0.5 * (v[next][0] + v[next][1]);
        }
      }
    }
    for (int lvl = 0; lvl < kL; ++lvl) {
      for (int p = 0; p < 2; ++p) {
        const double best = *std::max_element(q[lvl][p].begin(), q[lvl][p].end());
        delta = std::max(delta, std::abs(best - v[lvl][p]));
        v[lvl][p] = best;
      }
    }
    if (delta < 1e-13) break;
  }
  return q;
}

inline int argmax4(const std::array<double, 4>& q) {
  return static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
}

// Arena whose reward is a fixed function of the strategy index; the state is
// constant.
class ConstantArena : public Arena {
 public:
  using RewardFn = std::function<double(int action)>;

  ConstantArena(ArenaShape shape, RewardFn reward) : shape_(shape), reward_(std::move(reward)) {}

  ArenaShape shape() const override { return shape_; }
  ObsState observe() const override { return {}; }
  std::int64_t slot() const override { return slot_; }

  StepFeedback step(const Strategy& x) override {
    const int a = strategy_index(x, shape_.power_levels);
    played.push_back(a);
    ++slot_;
    StepFeedback fb;
    fb.reward = reward_(a);
    fb.outcome.utility = fb.reward;
    return fb;
  }

  std::vector<int> played;

 private:
  ArenaShape shape_;
  RewardFn reward_;
  std::int64_t slot_ = 0;
};

}  // namespace ajam::testing
