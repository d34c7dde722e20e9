#include "ajam/adversary.hpp"

#include <algorithm>
#include <numeric>

#include "ajam/error.hpp"

namespace ajam {

std::string to_string(JammerKind kind) {
  switch (kind) {
    case JammerKind::random: return "random";
    case JammerKind::sweep: return "sweep";
    case JammerKind::reactive: return "reactive";
  }
  return "?";
}

JammerKind jammer_kind_from_string(const std::string& name) {
  if (name == "random") return JammerKind::random;
  if (name == "sweep") return JammerKind::sweep;
  if (name == "reactive") return JammerKind::reactive;
  throw ConfigError("kind", "unknown jammer kind '" + name + "'");
}

void JammerConfig::validate(int n_channels, int n_nodes, const std::string& field) const {
  auto fail = [&](const std::string& key, const std::string& msg) {
    throw ConfigError(field + "." + key, msg);
  };
  if (!(stay_prob >= 0 && stay_prob <= 1)) fail("stay_prob", "probability must lie in [0, 1]");
  if (!(move_prob >= 0 && move_prob <= 1)) fail("move_prob", "probability must lie in [0, 1]");
  if (kind == JammerKind::sweep && (n_sweep < 1 || n_sweep > n_channels)) {
    fail("n_sweep", "must lie in [1, n_channels]");
  }
  if (kind == JammerKind::reactive && (n_monitor < 1 || n_monitor > n_channels)) {
    fail("n_monitor", "must lie in [1, n_channels]");
  }
  if (jam_power < 0) fail("jam_power", "must be >= 0");
  if (start_channel < 0 || start_channel > n_channels) {
    fail("start_channel", "must lie in [0, n_channels]");
  }
  if (move_period < 1) fail("move_period", "must be >= 1");
  for (int n : reach) {
    if (n < 0 || n >= n_nodes) fail("reach", "unknown serving node " + std::to_string(n));
  }
}

namespace {

std::vector<int> sample_monitored(int n_monitor, int n_channels, Rng& rng) {
  std::vector<int> all(n_channels);
  std::iota(all.begin(), all.end(), 1);
  // Partial Fisher-Yates.
  for (int i = 0; i < n_monitor; ++i) {
    int j = uniform_int(rng, i, n_channels - 1);
    std::swap(all[i], all[j]);
  }
  all.resize(n_monitor);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

JammerState initial_jammer_state(const JammerConfig& cfg, int n_channels, Rng& rng) {
  JammerState s;
  s.location = cfg.position;
  s.reach = cfg.reach;
  s.sweep_cursor = cfg.start_channel >= 1 ? cfg.start_channel : 1;
  switch (cfg.kind) {
    case JammerKind::random:
      s.channels = {cfg.start_channel >= 1 ? cfg.start_channel : uniform_int(rng, 1, n_channels)};
      break;
    case JammerKind::sweep:
      break;
    case JammerKind::reactive:
      s.monitored = sample_monitored(cfg.n_monitor, n_channels, rng);
      break;
  }
  return s;
}

int random_jam_step(JammerState& state, Rng& rng, const JammerConfig& cfg, int n_channels) {
  int current = state.channels.empty() ? uniform_int(rng, 1, n_channels) : state.channels.front();
  if (n_channels > 1 && !bernoulli(rng, cfg.stay_prob)) {
    // Uniform over the other N - 1 channels.
    int draw = uniform_int(rng, 1, n_channels - 1);
    current = draw >= current ? draw + 1 : draw;
  }
  state.channels = {current};
  return current;
}

std::vector<int> sweep_jam_step(JammerState& state, const JammerConfig& cfg, int n_channels) {
  std::vector<int> block(cfg.n_sweep);
  for (int i = 0; i < cfg.n_sweep; ++i) block[i] = (state.sweep_cursor - 1 + i) % n_channels + 1;
  state.sweep_cursor = (state.sweep_cursor - 1 + cfg.n_sweep) % n_channels + 1;
  state.channels = block;
  return block;
}

std::optional<int> reactive_jam_step(JammerState& state, std::span<const double> activity,
                                     double threshold, Rng& rng, const JammerConfig& cfg,
                                     int n_channels) {
  std::optional<int> target;
  double best = threshold;
  for (int c : state.monitored) {
    double p = static_cast<std::size_t>(c - 1) < activity.size() ? activity[c - 1] : 0.0;
    if (p > best) {
      best = p;
      target = c;
    }
  }
  if (!target) state.monitored = sample_monitored(cfg.n_monitor, n_channels, rng);
  state.channels.clear();
  if (target) state.channels.push_back(*target);
  return target;
}

bool maybe_move_jammer(JammerState& state, std::int64_t slot, Rng& rng, const Topology& topo,
                       const JammerConfig& cfg, int device_node) {
  if (!cfg.mobile || slot < 0 || (slot + 1) % cfg.move_period != 0) return false;
  if (!bernoulli(rng, cfg.move_prob)) return false;
  // Candidate positions: serving nodes, device locations, interference sources.
  std::vector<Point> positions;
  for (const auto& n : topo.nodes) positions.push_back(n.position);
  for (const auto& l : topo.locations) positions.push_back(l.position);
  for (const auto& i : topo.interferers) positions.push_back(i.position);
  state.location = positions[uniform_int(rng, 0, static_cast<int>(positions.size()) - 1)];
  state.reach = {device_node};
  return true;
}

Jammer::Jammer(JammerConfig cfg, int index, int n_channels, double detect_threshold,
               std::uint64_t seed)
    : cfg_(std::move(cfg)),
      index_(index),
      n_channels_(n_channels),
      threshold_(cfg_.threshold >= 0 ? cfg_.threshold : detect_threshold),
      rng_(seed) {
  state_ = initial_jammer_state(cfg_, n_channels_, rng_);
}

bool Jammer::reaches(int node) const {
  return std::find(state_.reach.begin(), state_.reach.end(), node) != state_.reach.end();
}

bool Jammer::maybe_move(std::int64_t slot, const Topology& topo, int device_node) {
  return maybe_move_jammer(state_, slot, rng_, topo, cfg_, device_node);
}

std::vector<Jam> Jammer::act(std::span<const double> last_activity) {
  std::vector<Jam> out;
  switch (cfg_.kind) {
    case JammerKind::random:
      out.push_back({index_, random_jam_step(state_, rng_, cfg_, n_channels_), cfg_.jam_power});
      break;
    case JammerKind::sweep: {
      const double per_channel = cfg_.jam_power / cfg_.n_sweep;
      for (int c : sweep_jam_step(state_, cfg_, n_channels_)) out.push_back({index_, c, per_channel});
      break;
    }
    case JammerKind::reactive:
      if (auto c = reactive_jam_step(state_, last_activity, threshold_, rng_, cfg_, n_channels_)) {
        out.push_back({index_, *c, cfg_.jam_power});
      }
      break;
  }
  return out;
}

}  // namespace ajam
