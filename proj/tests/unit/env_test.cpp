#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ajam/env.hpp"
#include "ajam/error.hpp"
#include "ajam/harness/scenario.hpp"

namespace ajam {
namespace {

ChannelGains unit_gains(int n_channels, int n_jammers) {
  ChannelGains g;
  g.n_channels = n_channels;
  g.device.assign(n_channels, 1.0);
  g.jammer.assign(static_cast<std::size_t>(n_channels) * n_jammers, 1.0);
  return g;
}

EnvConfig small_config(int n_channels = 4, int n_jammers = 1) {
  EnvConfig cfg;
  cfg.n_channels = n_channels;
  cfg.n_jammers = n_jammers;
  cfg.n_patterns = 3;
  cfg.pattern_len = 5;
  return cfg;
}

Topology line_topology(int n_locations) {
  Topology t;
  t.nodes = {{"n0", {0, 0}}};
  for (int i = 0; i < n_locations; ++i) t.locations.push_back({"l" + std::to_string(i), {}, 0});
  return t;
}

TEST(ChannelForSlot, FirstSlotReadsFirstEntry) {
  FrequencyPattern p;
  p.entries.assign(30, 1);
  p.entries[0] = 7;
  EXPECT_EQ(channel_for_slot(p, 0), 7);
  EXPECT_EQ(channel_for_slot(p, 30), 7);
}

TEST(ChannelForSlot, WrapsModuloLength) {
  FrequencyPattern p{{2, 5, 1}};
  EXPECT_EQ(channel_for_slot(p, 4), 5);
  EXPECT_EQ(channel_for_slot(p, 2), 1);
}

TEST(ChannelForSlot, PeriodicInPatternLength) {
  Rng rng(3);
  EnvConfig cfg = small_config(9);
  cfg.pattern_len = 7;
  for (const auto& p : generate_patterns(cfg, 1, rng)) {
    for (int k = 0; k < 100; ++k) EXPECT_EQ(channel_for_slot(p, k), channel_for_slot(p, k + 7));
  }
}

TEST(StepUtility, CleanChannelFullPower) {
  EnvConfig cfg = small_config();
  SlotOutcome out = step_utility({16, false}, 2, 2, unit_gains(4, 1), {}, true, false, cfg);
  EXPECT_DOUBLE_EQ(out.sinr, 8.0);
  EXPECT_DOUBLE_EQ(out.utility, 8.0 - 1.6);
}

TEST(StepUtility, ZeroPowerIsFree) {
  EnvConfig cfg = small_config();
  SlotOutcome out = step_utility({0, false}, 2, 2, unit_gains(4, 1), {}, true, false, cfg);
  EXPECT_EQ(out.sinr, 0.0);
  EXPECT_EQ(out.utility, 0.0);
}

TEST(StepUtility, JammedMoveAndHop) {
  EnvConfig cfg = small_config();
  const Jam jam{0, 3, 8.0};
  SlotOutcome out = step_utility({16, true}, 3, 1, unit_gains(4, 1), {&jam, 1}, true, false, cfg);
  const double sinr = 8.0 / 9.0;
  EXPECT_DOUBLE_EQ(out.sinr, sinr);
  EXPECT_NEAR(out.utility, sinr - 1.6 - 0.8 - 0.4, 1e-12);
  EXPECT_NEAR(out.utility, -1.9111, 1e-4);
}

TEST(StepUtility, JamOnOtherChannelDoesNotLand) {
  EnvConfig cfg = small_config();
  const Jam jam{0, 1, 8.0};
  SlotOutcome out = step_utility({16, false}, 3, 3, unit_gains(4, 1), {&jam, 1}, true, false, cfg);
  EXPECT_DOUBLE_EQ(out.sinr, 8.0);
}

TEST(StepUtility, InterferenceAddsToDenominator) {
  EnvConfig cfg = small_config();
  SlotOutcome out = step_utility({16, false}, 1, 1, unit_gains(4, 1), {}, true, true, cfg);
  EXPECT_DOUBLE_EQ(out.sinr, 8.0 / (1.0 + 8.0));
  EXPECT_TRUE(out.interfered);
}

TEST(StepUtility, FirstSlotHasNoHopCost) {
  EnvConfig cfg = small_config();
  SlotOutcome first = step_utility({0, false}, 1, std::nullopt, unit_gains(4, 1), {}, true, false, cfg);
  SlotOutcome hop = step_utility({0, false}, 1, 2, unit_gains(4, 1), {}, true, false, cfg);
  EXPECT_EQ(first.utility, 0.0);
  EXPECT_DOUBLE_EQ(hop.utility, -0.4);
}

TEST(StepUtility, PrimaryUserForcesSilenceWithoutTransmitCost) {
  EnvConfig cfg = small_config();
  SlotOutcome out = step_utility({16, true}, 1, 2, unit_gains(4, 1), {}, false, false, cfg);
  EXPECT_EQ(out.sinr, 0.0);
  EXPECT_DOUBLE_EQ(out.utility, -0.8 - 0.4);
  EXPECT_FALSE(out.pu_absent);
}

TEST(StepUtility, RejectsOutOfRangeInputs) {
  EnvConfig cfg = small_config();
  auto g = unit_gains(4, 1);
  EXPECT_THROW(step_utility({0, false}, 0, {}, g, {}, true, false, cfg), std::invalid_argument);
  EXPECT_THROW(step_utility({0, false}, 5, {}, g, {}, true, false, cfg), std::invalid_argument);
  EXPECT_THROW(step_utility({17, false}, 1, {}, g, {}, true, false, cfg), std::invalid_argument);
  EXPECT_THROW(step_utility({-1, false}, 1, {}, g, {}, true, false, cfg), std::invalid_argument);
  const Jam bad{0, 9, 8.0};
  EXPECT_THROW(step_utility({0, false}, 1, {}, g, {&bad, 1}, true, false, cfg),
               std::invalid_argument);
  g.device[0] = std::nan("");
  EXPECT_THROW(step_utility({0, false}, 1, {}, g, {}, true, false, cfg), std::invalid_argument);
}

// Randomized properties over the whole input space.
class StepUtilityProperty : public ::testing::TestWithParam<int> {};

TEST_P(StepUtilityProperty, DecompositionAndMonotonicity) {
  Rng rng(GetParam());
  EnvConfig cfg = small_config(6, 3);
  cfg.cost_tx_unit = uniform01(rng);
  cfg.cost_move = uniform01(rng);
  cfg.cost_hop = uniform01(rng);
  for (int trial = 0; trial < 500; ++trial) {
    ChannelGains g = resample_gains(rng, cfg);
    const int channel = uniform_int(rng, 1, cfg.n_channels);
    const int prev = uniform_int(rng, 1, cfg.n_channels);
    const bool pu_absent = bernoulli(rng, 0.8);
    const bool interfered = bernoulli(rng, 0.3);
    std::vector<Jam> jams;
    for (int j = 0; j < 3; ++j) {
      if (bernoulli(rng, 0.5)) jams.push_back({j, uniform_int(rng, 1, cfg.n_channels), 8.0});
    }
    const Strategy x{uniform_int(rng, 0, cfg.power_levels), bernoulli(rng, 0.5)};
    SlotOutcome out = step_utility(x, channel, prev, g, jams, pu_absent, interfered, cfg);

    const double p_eff = pu_absent ? cfg.power_of(x.power_level) : 0.0;
    const double expected = out.sinr - cfg.cost_tx_unit * p_eff - cfg.cost_move * (x.move ? 1.0 : 0.0) -
                            cfg.cost_hop * (channel != prev ? 1.0 : 0.0);
    EXPECT_EQ(out.utility, expected);
    EXPECT_GE(out.sinr, 0.0);
    if (!pu_absent) {
      EXPECT_EQ(out.sinr, 0.0);
      EXPECT_LE(out.utility, 0.0);
    }

    if (x.power_level < cfg.power_levels) {
      SlotOutcome louder = step_utility({x.power_level + 1, x.move}, channel, prev, g, jams,
                                        pu_absent, interfered, cfg);
      EXPECT_GE(louder.sinr, out.sinr);
    }
    std::vector<Jam> more = jams;
    more.push_back({0, channel, 8.0});
    SlotOutcome jammed = step_utility(x, channel, prev, g, more, pu_absent, interfered, cfg);
    EXPECT_LE(jammed.sinr, out.sinr);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, StepUtilityProperty, ::testing::Values(1, 2, 3, 4));

TEST(Gains, InUnitIntervalAndReproducible) {
  EnvConfig cfg = small_config(100, 3);
  Rng a(42), b(42);
  ChannelGains ga = resample_gains(a, cfg);
  ChannelGains gb = resample_gains(b, cfg);
  EXPECT_EQ(ga.device, gb.device);
  EXPECT_EQ(ga.jammer, gb.jammer);
  for (double h : ga.device) {
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, 1.0);
  }
  EXPECT_EQ(ga.jammer.size(), 300u);
}

TEST(Gains, DifferentSeedsDiffer) {
  EnvConfig cfg = small_config(10000, 0);
  Rng a(1), b(2);
  ChannelGains ga = resample_gains(a, cfg);
  ChannelGains gb = resample_gains(b, cfg);
  int same = 0;
  for (int i = 0; i < cfg.n_channels; ++i) same += ga.device[i] == gb.device[i];
  EXPECT_LT(same, 5);
}

TEST(Environment, GainsChangeOnlyAtRefreshOrMove) {
  EnvConfig cfg = small_config(4, 1);
  Rng prng(5);
  Environment env(cfg, line_topology(2), generate_patterns(cfg, 1, prng), PatternSelect::random, 9);
  for (int k = 0; k < 1600; ++k) {
    const ChannelGains before = env.gains();
    bool moved = false;
    if (k == 777) {
      env.move();
      moved = true;
    }
    env.end_slot(env.current_channel(), true);
    const bool boundary = env.slot() % 500 == 0;
    const bool same = before.device == env.gains().device && before.jammer == env.gains().jammer;
    EXPECT_EQ(same, !(boundary || moved)) << "slot " << k;
  }
}

TEST(Environment, FrozenGainsWithZeroPeriod) {
  EnvConfig cfg = small_config(4, 1);
  cfg.gain_refresh_period = 0;
  Rng prng(1);
  Environment env(cfg, line_topology(1), generate_patterns(cfg, 1, prng), PatternSelect::fixed, 3);
  env.set_gains(unit_gains(4, 1));
  for (int k = 0; k < 1200; ++k) env.end_slot(1, true);
  EXPECT_EQ(env.gains().device, std::vector<double>(4, 1.0));
  EXPECT_THROW(env.set_gains(unit_gains(3, 1)), std::invalid_argument);
}

TEST(Environment, LostFeedbackKeepsPattern) {
  EnvConfig cfg = small_config(8, 0);
  cfg.n_patterns = 10;
  Rng prng(1);
  Environment env(cfg, line_topology(1), generate_patterns(cfg, 1, prng), PatternSelect::random, 3);
  const int psi = env.pattern_index();
  for (int k = 0; k < 50; ++k) env.end_slot(1, false);
  EXPECT_EQ(env.pattern_index(), psi);
  bool changed = false;
  for (int k = 0; k < 50; ++k) {
    env.end_slot(1, true);
    changed |= env.pattern_index() != psi;
  }
  EXPECT_TRUE(changed);
}

TEST(Environment, FixedSelectionNeverChangesPattern) {
  EnvConfig cfg = small_config(8, 0);
  Rng prng(1);
  Environment env(cfg, line_topology(1), generate_patterns(cfg, 1, prng), PatternSelect::fixed, 3);
  for (int k = 0; k < 50; ++k) {
    env.end_slot(1, true);
    EXPECT_EQ(env.pattern_index(), 1);
  }
}

TEST(Mobility, OfficeAlternatesAccessPoints) {
  const Topology topo = builtin_scenario("office").topology;
  LocationChange c = move_device(0, topo);
  EXPECT_EQ(c.node, 1);
  EXPECT_EQ(topo.nodes[c.node].name, "ap-2");
  EXPECT_EQ(move_device(c.location, topo).location, 0);
}

TEST(Mobility, ApartmentCyclesThroughAllNodes) {
  const Topology topo = builtin_scenario("apartment").topology;
  ASSERT_EQ(topo.locations.size(), 4u);
  int loc = 0;
  for (int i = 0; i < 3; ++i) {
    loc = move_device(loc, topo).location;
    EXPECT_NE(loc, 0);
  }
  EXPECT_EQ(move_device(loc, topo).location, 0);
}

TEST(Mobility, SingleLocationStaysButPaysMoveCost) {
  const Topology topo = line_topology(1);
  EXPECT_EQ(move_device(0, topo).location, 0);
  EnvConfig cfg = small_config();
  SlotOutcome out = step_utility({0, true}, 1, 1, unit_gains(4, 1), {}, true, false, cfg);
  EXPECT_DOUBLE_EQ(out.utility, -cfg.cost_move);
}

TEST(PrimaryUser, DisabledNeverBlocks) {
  EnvConfig cfg = small_config(1, 0);
  cfg.pu_active = false;
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(sample_pu(rng, 1, cfg));
}

TEST(PrimaryUser, SingleChannelAlwaysCollides) {
  EnvConfig cfg = small_config(1, 0);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(sample_pu(rng, 1, cfg));
}

TEST(PrimaryUser, CollisionRateIsOneOverN) {
  EnvConfig cfg = small_config(96, 0);
  Rng rng(11);
  const int n = 100000;
  int blocked = 0;
  for (int i = 0; i < n; ++i) blocked += !sample_pu(rng, 1 + i % 96, cfg);
  const double rate = static_cast<double>(blocked) / n;
  EXPECT_NEAR(rate, 1.0 / 96, 0.2 / 96);
}

TEST(Quantize, FloorAndClamp) {
  EnvConfig cfg;
  EXPECT_EQ(quantize_sinr(0.0, cfg), 0);
  EXPECT_EQ(quantize_sinr(8.0, cfg), cfg.sinr_levels - 1);
  EXPECT_EQ(quantize_sinr(1e9, cfg), cfg.sinr_levels - 1);
  cfg.sinr_levels = 8;
  EXPECT_EQ(quantize_sinr(3.2, cfg), 3);
  EXPECT_THROW(quantize_sinr(-0.1, cfg), std::invalid_argument);
  EXPECT_THROW(quantize_sinr(std::nan(""), cfg), std::invalid_argument);
}

TEST(Strategies, IndexRoundTrip) {
  const int levels = 16;
  EnvConfig cfg;
  EXPECT_EQ(cfg.n_strategies(), 34);
  for (int i = 0; i < 34; ++i) {
    Strategy s = strategy_from_index(i, levels);
    EXPECT_GE(s.power_level, 0);
    EXPECT_LE(s.power_level, levels);
    EXPECT_EQ(strategy_index(s, levels), i);
  }
  EXPECT_EQ(strategy_from_index(17, levels), (Strategy{0, true}));
  EXPECT_THROW(strategy_from_index(34, levels), std::out_of_range);
  EXPECT_THROW(strategy_from_index(-1, levels), std::out_of_range);
}

TEST(Patterns, GeneratedPatternsRespectDwell) {
  EnvConfig cfg = small_config(5, 0);
  cfg.pattern_len = 30;
  cfg.n_patterns = 10;
  Rng rng(8);
  auto patterns = generate_patterns(cfg, 10, rng);
  ASSERT_EQ(patterns.size(), 10u);
  EXPECT_NO_THROW(validate_patterns(patterns, cfg));
  for (const auto& p : patterns) {
    for (int i = 0; i < 30; ++i) {
      if (i % 10 != 0) EXPECT_EQ(p.entries[i], p.entries[i - 1]);
      if (i > 0 && i % 10 == 0) EXPECT_NE(p.entries[i], p.entries[i - 1]);
    }
  }
}

TEST(Patterns, ValidationNamesTheField) {
  EnvConfig cfg = small_config(4, 0);
  std::vector<FrequencyPattern> patterns(3, FrequencyPattern{{1, 2, 3, 4, 1}});
  EXPECT_NO_THROW(validate_patterns(patterns, cfg));
  patterns[1].entries.pop_back();
  try {
    validate_patterns(patterns, cfg);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "patterns[1]");
  }
  patterns[1].entries = {1, 2, 3, 4, 5};
  EXPECT_THROW(validate_patterns(patterns, cfg), ConfigError);
  patterns.pop_back();
  EXPECT_THROW(validate_patterns(patterns, cfg), ConfigError);
}

TEST(EnvConfigValidation, RejectsEachBadField) {
  auto field_of = [](EnvConfig cfg) -> std::string {
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "";
  };
  EXPECT_EQ(field_of(EnvConfig{}), "");
  EnvConfig c;
  c.n_channels = 0;
  EXPECT_EQ(field_of(c), "env.n_channels");
  c = {};
  c.power_levels = 0;
  EXPECT_EQ(field_of(c), "env.power_levels");
  c = {};
  c.noise = 0;
  EXPECT_EQ(field_of(c), "env.noise");
  c = {};
  c.cost_hop = -1;
  EXPECT_EQ(field_of(c), "env.cost_hop");
  c = {};
  c.sinr_levels = 1;
  EXPECT_EQ(field_of(c), "env.sinr_levels");
  c = {};
  c.interference_probs = {0.1, 1.5};
  EXPECT_EQ(field_of(c), "env.interference_probs[1]");
}

TEST(TopologyValidation, RejectsDanglingReferences) {
  Topology t = line_topology(2);
  EXPECT_NO_THROW(t.validate());
  t.locations[1].node = 3;
  EXPECT_THROW(t.validate(), ConfigError);
  t = line_topology(1);
  t.interferers.push_back({"mw", {}, {2}});
  EXPECT_THROW(t.validate(), ConfigError);
  EXPECT_THROW(Topology{}.validate(), ConfigError);
}

TEST(Interference, OnlySourcesReachingTheNodeCount) {
  EnvConfig cfg = small_config(4, 0);
  cfg.interference_probs = {1.0};
  Topology topo;
  topo.nodes = {{"a", {}}, {"b", {}}};
  topo.locations = {{"la", {}, 0}, {"lb", {}, 1}};
  topo.interferers = {{"mw", {}, {1}}};
  Rng prng(1);
  Environment env(cfg, topo, generate_patterns(cfg, 1, prng), PatternSelect::random, 4);
  EXPECT_FALSE(env.sample_interference());
  env.move();
  EXPECT_TRUE(env.sample_interference());
}

}  // namespace
}  // namespace ajam
