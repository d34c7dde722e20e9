#include "ajam/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ajam/error.hpp"

namespace ajam {

namespace {

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

void EnvConfig::validate() const {
  require(n_channels >= 1, "env.n_channels", "must be >= 1");
  require(n_jammers >= 0, "env.n_jammers", "must be >= 0");
  require(std::isfinite(max_power) && max_power > 0, "env.max_power", "must be > 0");
  require(power_levels >= 1, "env.power_levels", "must be >= 1");
  require(std::isfinite(noise) && noise > 0, "env.noise", "must be > 0");
  require(interference_power >= 0, "env.interference_power", "must be >= 0");
  require(jam_power >= 0, "env.jam_power", "must be >= 0");
  require(cost_move >= 0, "env.cost_move", "must be >= 0");
  require(cost_hop >= 0, "env.cost_hop", "must be >= 0");
  require(cost_tx_unit >= 0, "env.cost_tx_unit", "must be >= 0");
  require(n_patterns >= 1, "env.n_patterns", "must be >= 1");
  require(pattern_len >= 1, "env.pattern_len", "must be >= 1");
  require(gain_refresh_period >= 0, "env.gain_refresh_period", "must be >= 0");
  require(sinr_levels >= 2, "env.sinr_levels", "must be >= 2");
  require(std::isfinite(sinr_max) && sinr_max > 0, "env.sinr_max", "must be > 0");
  for (std::size_t i = 0; i < interference_probs.size(); ++i) {
    double p = interference_probs[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("env.interference_probs[" + std::to_string(i) + "]",
                        "probability must lie in [0, 1]");
    }
  }
}

Strategy strategy_from_index(int index, int power_levels) {
  if (index < 0 || index >= 2 * (power_levels + 1)) {
    throw std::out_of_range("strategy index " + std::to_string(index) + " out of range");
  }
  return Strategy{index % (power_levels + 1), index >= power_levels + 1};
}

int strategy_index(const Strategy& s, int power_levels) {
  return (s.move ? power_levels + 1 : 0) + s.power_level;
}

std::vector<FrequencyPattern> generate_patterns(const EnvConfig& cfg, int dwell, Rng& rng) {
  dwell = std::max(dwell, 1);
  std::vector<FrequencyPattern> out(cfg.n_patterns);
  for (auto& pattern : out) {
    pattern.entries.reserve(cfg.pattern_len);
    int channel = 0;
    for (int i = 0; i < cfg.pattern_len; ++i) {
      if (i % dwell == 0) {
        int next = uniform_int(rng, 1, cfg.n_channels);
        if (dwell > 1 && cfg.n_channels > 1) {
          while (next == channel) next = uniform_int(rng, 1, cfg.n_channels);
        }
        channel = next;
      }
      pattern.entries.push_back(channel);
    }
  }
  return out;
}

void validate_patterns(std::span<const FrequencyPattern> patterns, const EnvConfig& cfg) {
  if (static_cast<int>(patterns.size()) != cfg.n_patterns) {
    throw ConfigError("patterns", "expected " + std::to_string(cfg.n_patterns) +
                                      " patterns (env.n_patterns), got " +
                                      std::to_string(patterns.size()));
  }
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& e = patterns[i].entries;
    std::string field = "patterns[" + std::to_string(i) + "]";
    if (static_cast<int>(e.size()) != cfg.pattern_len) {
      throw ConfigError(field, "expected " + std::to_string(cfg.pattern_len) +
                                   " entries (env.pattern_len), got " + std::to_string(e.size()));
    }
    for (int c : e) {
      if (c < 1 || c > cfg.n_channels) {
        throw ConfigError(field, "channel " + std::to_string(c) + " outside [1, " +
                                     std::to_string(cfg.n_channels) + "]");
      }
    }
  }
}

int channel_for_slot(const FrequencyPattern& pattern, std::int64_t k) {
  const auto len = static_cast<std::int64_t>(pattern.entries.size());
  return pattern.entries[static_cast<std::size_t>(((k % len) + len) % len)];
}

void Topology::validate() const {
  if (nodes.empty()) throw ConfigError("topology.nodes", "at least one serving node required");
  if (locations.empty()) {
    throw ConfigError("topology.locations", "at least one device location required");
  }
  for (std::size_t i = 0; i < locations.size(); ++i) {
    int n = locations[i].node;
    if (n < 0 || n >= static_cast<int>(nodes.size())) {
      throw ConfigError("topology.locations[" + std::to_string(i) + "].node",
                        "unknown serving node " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < interferers.size(); ++i) {
    for (int n : interferers[i].reach) {
      if (n < 0 || n >= static_cast<int>(nodes.size())) {
        throw ConfigError("topology.interferers[" + std::to_string(i) + "].reach",
                          "unknown serving node " + std::to_string(n));
      }
    }
  }
}

LocationChange move_device(int current_location, const Topology& topo) {
  int next = (current_location + 1) % static_cast<int>(topo.locations.size());
  return LocationChange{next, topo.locations[next].node};
}

ChannelGains resample_gains(Rng& rng, const EnvConfig& cfg) {
  ChannelGains g;
  g.n_channels = cfg.n_channels;
  g.device.resize(cfg.n_channels);
  for (auto& h : g.device) h = uniform01(rng);
  g.jammer.resize(static_cast<std::size_t>(cfg.n_jammers) * cfg.n_channels);
  for (auto& h : g.jammer) h = uniform01(rng);
  return g;
}

void resample_jammer_row(ChannelGains& gains, int jammer, Rng& rng) {
  auto first = gains.jammer.begin() + static_cast<std::ptrdiff_t>(jammer) * gains.n_channels;
  std::generate(first, first + gains.n_channels, [&] { return uniform01(rng); });
}

SlotOutcome step_utility(const Strategy& strategy, int channel, std::optional<int> prev_channel,
                         const ChannelGains& gains, std::span<const Jam> jams, bool pu_absent,
                         bool interfered, const EnvConfig& cfg) {
  if (channel < 1 || channel > cfg.n_channels) {
    throw std::invalid_argument("channel " + std::to_string(channel) + " out of range");
  }
  if (strategy.power_level < 0 || strategy.power_level > cfg.power_levels) {
    throw std::invalid_argument("power level " + std::to_string(strategy.power_level) +
                                " out of range");
  }
  const double h_s = gains.device_gain(channel);
  if (!std::isfinite(h_s)) throw std::invalid_argument("non-finite device gain");

  double denom = cfg.noise + (interfered ? cfg.interference_power : 0.0);
  for (const Jam& jam : jams) {
    if (jam.channel < 1 || jam.channel > cfg.n_channels) {
      throw std::invalid_argument("jamming channel " + std::to_string(jam.channel) +
                                  " out of range");
    }
    if (jam.channel != channel) continue;
    const double h_j = gains.jammer_gain(jam.jammer, jam.channel);
    if (!std::isfinite(h_j)) throw std::invalid_argument("non-finite jammer gain");
    denom += jam.power * h_j;
  }

  const double tx_power = pu_absent ? cfg.power_of(strategy.power_level) : 0.0;
  const bool hopped = prev_channel.has_value() && *prev_channel != channel;

  SlotOutcome out;
  out.channel_used = channel;
  out.pu_absent = pu_absent;
  out.interfered = interfered;
  out.sinr = tx_power * h_s / denom;
  out.utility = out.sinr - cfg.cost_tx_unit * tx_power - cfg.cost_move * (strategy.move ? 1.0 : 0.0) -
                cfg.cost_hop * (hopped ? 1.0 : 0.0);
  return out;
}

bool sample_pu(Rng& rng, int channel, const EnvConfig& cfg) {
  if (!cfg.pu_active) return true;
  return uniform_int(rng, 1, cfg.n_channels) != channel;
}

int quantize_sinr(double sinr, const EnvConfig& cfg) {
  if (!(sinr >= 0.0)) throw std::invalid_argument("sinr must be >= 0");
  const double width = cfg.sinr_max / cfg.sinr_levels;
  const double bin = std::floor(sinr / width);
  if (bin >= cfg.sinr_levels - 1) return cfg.sinr_levels - 1;
  return static_cast<int>(bin);
}

Environment::Environment(EnvConfig cfg, Topology topo, std::vector<FrequencyPattern> patterns,
                         PatternSelect select, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      topo_(std::move(topo)),
      patterns_(std::move(patterns)),
      select_(select),
      gain_rng_(make_rng(seed, 11)),
      pu_rng_(make_rng(seed, 12)),
      interference_rng_(make_rng(seed, 13)),
      pattern_rng_(make_rng(seed, 14)) {
  cfg_.validate();
  topo_.validate();
  validate_patterns(patterns_, cfg_);
  if (cfg_.interference_probs.size() != topo_.interferers.size()) {
    throw ConfigError("env.interference_probs",
                      "expected one probability per interference source (" +
                          std::to_string(topo_.interferers.size()) + ")");
  }
  gains_ = resample_gains(gain_rng_, cfg_);
  if (select_ == PatternSelect::random) psi_ = uniform_int(pattern_rng_, 1, cfg_.n_patterns);
}

void Environment::set_gains(ChannelGains gains) {
  if (gains.n_channels != cfg_.n_channels ||
      static_cast<int>(gains.device.size()) != cfg_.n_channels ||
      gains.jammer.size() != static_cast<std::size_t>(cfg_.n_jammers) * cfg_.n_channels) {
    throw std::invalid_argument("gain shape does not match the environment");
  }
  gains_ = std::move(gains);
}

int Environment::current_channel() const { return channel_for_slot(patterns_[psi_ - 1], slot_); }

LocationChange Environment::move() {
  LocationChange change = move_device(location_, topo_);
  location_ = change.location;
  gains_ = resample_gains(gain_rng_, cfg_);
  return change;
}

void Environment::resample_jammer_gains(int jammer) { resample_jammer_row(gains_, jammer, gain_rng_); }

bool Environment::sample_pu() { return ajam::sample_pu(pu_rng_, current_channel(), cfg_); }

bool Environment::sample_interference() {
  // Every source draws each slot so the stream does not depend on location.
  bool interfered = false;
  const int node = serving_node();
  for (std::size_t i = 0; i < topo_.interferers.size(); ++i) {
    bool active = bernoulli(interference_rng_, cfg_.interference_probs[i]);
    const auto& reach = topo_.interferers[i].reach;
    if (active && std::find(reach.begin(), reach.end(), node) != reach.end()) interfered = true;
  }
  return interfered;
}

void Environment::end_slot(int channel_used, bool feedback_delivered) {
  prev_channel_ = channel_used;
  if (select_ == PatternSelect::random) {
    int next = uniform_int(pattern_rng_, 1, cfg_.n_patterns);
    if (feedback_delivered) psi_ = next;
  }
  ++slot_;
  if (cfg_.gain_refresh_period > 0 && slot_ % cfg_.gain_refresh_period == 0) {
    gains_ = resample_gains(gain_rng_, cfg_);
  }
}

}  // namespace ajam
