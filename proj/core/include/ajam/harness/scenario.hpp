#pragma once

// Scenario description: everything needed to run a family of seeded games.
// Scenario files are YAML; see docs/scenario-format.md for the grammar.

#include <cstdint>
#include <string>
#include <vector>

#include "ajam/adversary.hpp"
#include "ajam/dqn.hpp"
#include "ajam/env.hpp"

namespace ajam {

enum class AgentKind { greedy, qlearn, dqn, fastdqn };

std::string to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& name);
const std::vector<AgentKind>& all_agent_kinds();

enum class FeedbackLoss { off, zero_sinr };

struct Scenario {
  std::string name = "custom";
  EnvConfig env;
  Topology topology;
  int start_location = 0;
  std::vector<JammerConfig> jammers;
  std::vector<AgentKind> agents = all_agent_kinds();
  int slots_per_episode = 2000;
  int n_episodes = 20;
  std::uint64_t seed = 1;

  FeedbackLoss feedback_loss = FeedbackLoss::off;
  double feedback_loss_prob = 0.0;

  // Empty means: draw fresh patterns for every episode.
  std::vector<FrequencyPattern> patterns;
  int pattern_dwell = 1;
  PatternSelect pattern_select = PatternSelect::random;

  LearnSchedule schedule;
  DqnConfig dqn;
  bool greedy_explore = true;

  int curve_window = 50;
  int summary_window = 500;  // M

  // Keeps env.n_jammers and env.interference_probs consistent with the
  // jammer and interferer lists.
  void sync();
  // Throws ConfigError naming the first invalid field.
  void validate() const;

  ArenaShape shape() const { return {env.power_levels, env.sinr_levels, env.n_patterns}; }
};

const std::vector<std::string>& builtin_scenario_names();
// Throws ConfigError("scenario", ...) for an unknown name.
Scenario builtin_scenario(const std::string& name);

// Parses YAML text; `origin` prefixes parse-error messages.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
// Reads a scenario file, or a built-in scenario when `ref` names one and no
// such file exists.
Scenario load_scenario(const std::string& ref);
// Canonical YAML form; parse_scenario(dump_scenario(s)) reproduces s.
std::string dump_scenario(const Scenario& s);

}  // namespace ajam
