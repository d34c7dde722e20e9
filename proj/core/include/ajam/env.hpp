#pragma once

// Radio environment of the anti-jamming game: frequency patterns, device
// locations, channel power gains, primary-user and interference processes,
// and the per-slot SINR / utility evaluation.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ajam/rng.hpp"

namespace ajam {

// Channels are 1-based throughout: a channel index lies in [1, n_channels].

struct EnvConfig {
  int n_channels = 32;
  int n_jammers = 0;
  double max_power = 8.0;
  int power_levels = 16;  // L; feasible powers are max_power * l / L, 0 <= l <= L
  double noise = 1.0;
  double interference_power = 8.0;
  double jam_power = 8.0;
  double cost_move = 0.8;
  double cost_hop = 0.4;
  double cost_tx_unit = 0.2;
  int n_patterns = 10;
  int pattern_len = 30;
  int gain_refresh_period = 500;  // 0 freezes the gains
  bool pu_active = true;
  std::vector<double> interference_probs;
  int sinr_levels = 16;
  double sinr_max = 8.0;

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  double power_of(int level) const { return max_power * level / power_levels; }
  int n_strategies() const { return 2 * (power_levels + 1); }
};

struct Strategy {
  int power_level = 0;
  bool move = false;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

// Strategies are enumerated as index = move * (L + 1) + power_level.
Strategy strategy_from_index(int index, int power_levels);
int strategy_index(const Strategy& s, int power_levels);

struct FrequencyPattern {
  std::vector<int> entries;
};

// How the serving node picks the next pattern index with each feedback.
enum class PatternSelect { random, fixed };

// Builds `cfg.n_patterns` patterns of length `cfg.pattern_len`. With
// dwell > 1 each drawn channel is held for `dwell` consecutive slots and
// consecutive blocks use different channels (when N > 1).
std::vector<FrequencyPattern> generate_patterns(const EnvConfig& cfg, int dwell, Rng& rng);

// Throws ConfigError("patterns[i]", ...) on a length or range violation.
void validate_patterns(std::span<const FrequencyPattern> patterns, const EnvConfig& cfg);

// f^(k) for 0-based slot k.
int channel_for_slot(const FrequencyPattern& pattern, std::int64_t k);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct RadioNode {
  std::string name;
  Point position;
};

struct DeviceLocation {
  std::string name;
  Point position;
  int node = 0;  // serving node index
};

// An interference source; `reach` lists the serving nodes it disturbs.
struct Interferer {
  std::string name;
  Point position;
  std::vector<int> reach;
};

// Coordinates are descriptive only; gains are sampled, never derived from
// geometry.
struct Topology {
  std::vector<RadioNode> nodes;
  std::vector<DeviceLocation> locations;
  std::vector<Interferer> interferers;

  void validate() const;
};

struct LocationChange {
  int location = 0;
  int node = 0;
};

// Round-robin advance over the topology's device locations.
LocationChange move_device(int current_location, const Topology& topo);

struct ChannelGains {
  int n_channels = 0;
  std::vector<double> device;  // h_s, length N
  std::vector<double> jammer;  // h_j, row-major J x N

  double device_gain(int channel) const { return device[channel - 1]; }
  double jammer_gain(int j, int channel) const {
    return jammer[static_cast<std::size_t>(j) * n_channels + (channel - 1)];
  }
};

ChannelGains resample_gains(Rng& rng, const EnvConfig& cfg);
void resample_jammer_row(ChannelGains& gains, int jammer, Rng& rng);

// One jamming emission arriving at the serving node.
struct Jam {
  int jammer = 0;
  int channel = 1;
  double power = 0.0;
};

struct SlotOutcome {
  double sinr = 0.0;
  double utility = 0.0;
  int channel_used = 1;
  bool pu_absent = true;  // lambda
  bool interfered = false;  // eta
};

// Per-slot SINR and utility. `prev_channel` is empty on the first slot, which
// is charged no hop cost. With pu_absent == false the device stays silent:
// the effective transmit power is zero for both the signal and its cost.
SlotOutcome step_utility(const Strategy& strategy, int channel, std::optional<int> prev_channel,
                         const ChannelGains& gains, std::span<const Jam> jams, bool pu_absent,
                         bool interfered, const EnvConfig& cfg);

// lambda: false iff the PU's uniformly chosen channel equals `channel`.
bool sample_pu(Rng& rng, int channel, const EnvConfig& cfg);

int quantize_sinr(double sinr, const EnvConfig& cfg);

// Owns the device-side state of one game instance.
class Environment {
 public:
  Environment(EnvConfig cfg, Topology topo, std::vector<FrequencyPattern> patterns,
              PatternSelect select, std::uint64_t seed);

  const EnvConfig& config() const { return cfg_; }
  const Topology& topology() const { return topo_; }
  const std::vector<FrequencyPattern>& patterns() const { return patterns_; }

  std::int64_t slot() const { return slot_; }
  int location() const { return location_; }
  int serving_node() const { return topo_.locations[location_].node; }
  int pattern_index() const { return psi_; }  // 1-based
  std::optional<int> prev_channel() const { return prev_channel_; }
  const ChannelGains& gains() const { return gains_; }

  // Replaces the gains; with gain_refresh_period == 0 they stay frozen.
  void set_gains(ChannelGains gains);

  int current_channel() const;

  // Relocates the device and resamples every gain.
  LocationChange move();
  void resample_jammer_gains(int jammer);

  bool sample_pu();
  bool sample_interference();

  // Closes the current slot: records the channel, lets the serving node pick
  // the next pattern when feedback is delivered, and refreshes the gains at
  // period boundaries.
  void end_slot(int channel_used, bool feedback_delivered);

 private:
  EnvConfig cfg_;
  Topology topo_;
  std::vector<FrequencyPattern> patterns_;
  PatternSelect select_;
  Rng gain_rng_;
  Rng pu_rng_;
  Rng interference_rng_;
  Rng pattern_rng_;
  ChannelGains gains_;
  std::int64_t slot_ = 0;
  int location_ = 0;
  int psi_ = 1;
  std::optional<int> prev_channel_;
};

}  // namespace ajam
