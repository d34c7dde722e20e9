#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ajam/agent.hpp"
#include "ajam/harness/scenario.hpp"
#include "ajam/harness/world.hpp"

namespace ajam {

// Seed of evaluation episode `index`.
inline std::uint64_t episode_seed(const Scenario& s, int index) {
  return s.seed + static_cast<std::uint64_t>(index);
}

// Pretrained parameters shared by every fast-DQN episode of a scenario. The
// emulated games use seeds disjoint from the evaluation episodes.
HotbootResult hotboot_for(const Scenario& scenario);

std::unique_ptr<Agent> make_agent(const Scenario& scenario, AgentKind kind, std::uint64_t seed,
                                  const HotbootResult* pretrained);

struct EpisodeResult {
  AgentKind agent = AgentKind::greedy;
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;  // exactly slots_per_episode
};

// `pretrained` is required for the fast DQN.
EpisodeResult run_episode(const Scenario& scenario, AgentKind kind, int index,
                          const HotbootResult* pretrained = nullptr);

}  // namespace ajam
