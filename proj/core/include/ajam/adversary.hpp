#pragma once

// Jammer behaviours: random (sticky), sweep (block scan), reactive (energy
// detection on a monitored subset) and the optional mobility overlay.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ajam/env.hpp"
#include "ajam/rng.hpp"

namespace ajam {

enum class JammerKind { random, sweep, reactive };

std::string to_string(JammerKind kind);
JammerKind jammer_kind_from_string(const std::string& name);

struct JammerConfig {
  JammerKind kind = JammerKind::random;
  std::string name;
  double stay_prob = 0.9;  // random kind: keep the previous channel
  int n_sweep = 4;         // N_J
  int n_monitor = 8;       // N_r
  double jam_power = 8.0;
  double threshold = -1.0;  // reactive detection power; < 0 selects P / (2L)
  int start_channel = 1;    // sweep cursor / random jammer's first channel (0 = draw)
  Point position;
  std::vector<int> reach;  // serving nodes this jammer can disturb
  bool mobile = false;
  double move_prob = 0.8;
  int move_period = 200;

  // Throws ConfigError using `field` as the path prefix.
  void validate(int n_channels, int n_nodes, const std::string& field) const;
};

struct JammerState {
  std::vector<int> channels;   // channels jammed in the current slot
  int sweep_cursor = 1;
  std::vector<int> monitored;  // reactive kind, sorted
  Point location;
  std::vector<int> reach;
};

JammerState initial_jammer_state(const JammerConfig& cfg, int n_channels, Rng& rng);

int random_jam_step(JammerState& state, Rng& rng, const JammerConfig& cfg, int n_channels);

std::vector<int> sweep_jam_step(JammerState& state, const JammerConfig& cfg, int n_channels);

// `activity` holds the device power observed on each channel in the previous
// slot (index c - 1 for channel c).
std::optional<int> reactive_jam_step(JammerState& state, std::span<const double> activity,
                                     double threshold, Rng& rng, const JammerConfig& cfg,
                                     int n_channels);

// Returns true when the jammer relocated at 0-based `slot`; checkpoints are the
// slots with (slot + 1) % move_period == 0. A relocated jammer targets
// `device_node`.
bool maybe_move_jammer(JammerState& state, std::int64_t slot, Rng& rng, const Topology& topo,
                       const JammerConfig& cfg, int device_node);

// One jammer with its own random stream.
class Jammer {
 public:
  Jammer(JammerConfig cfg, int index, int n_channels, double detect_threshold, std::uint64_t seed);

  const JammerConfig& config() const { return cfg_; }
  const JammerState& state() const { return state_; }
  int index() const { return index_; }

  bool reaches(int node) const;

  // Mobility checkpoint; returns true when the jammer moved.
  bool maybe_move(std::int64_t slot, const Topology& topo, int device_node);

  // Emissions for the current slot given last slot's observed activity.
  std::vector<Jam> act(std::span<const double> last_activity);

 private:
  JammerConfig cfg_;
  int index_;
  int n_channels_;
  double threshold_;
  Rng rng_;
  JammerState state_;
};

}  // namespace ajam
