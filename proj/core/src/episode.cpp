#include "ajam/harness/episode.hpp"

#include <stdexcept>

#include "ajam/dqn.hpp"
#include "ajam/greedy.hpp"
#include "ajam/qlearn.hpp"

namespace ajam {

namespace {
// Emulated-game seeds live in their own stream, away from seed + index.
constexpr std::uint64_t kHotbootStream = 0x484f54424f4f54ull;
}  // namespace

HotbootResult hotboot_for(const Scenario& scenario) {
  const std::uint64_t base = derive_seed(scenario.seed, kHotbootStream);
  ArenaFactory factory = [&scenario, base](int i) -> std::unique_ptr<Arena> {
    return std::make_unique<World>(scenario, derive_seed(base, 1000 + i));
  };
  return hotboot(factory, scenario.dqn.hotboot_episodes, scenario.dqn.hotboot_slots, scenario.dqn,
                 scenario.shape(), base);
}

std::unique_ptr<Agent> make_agent(const Scenario& scenario, AgentKind kind, std::uint64_t seed,
                                  const HotbootResult* pretrained) {
  const ArenaShape shape = scenario.shape();
  const std::uint64_t agent_seed = derive_seed(seed, 200 + static_cast<int>(kind));
  switch (kind) {
    case AgentKind::greedy:
      return std::make_unique<GreedyAgent>(shape, scenario.schedule, scenario.greedy_explore,
                                           agent_seed);
    case AgentKind::qlearn:
      return std::make_unique<QLearningAgent>(shape, scenario.schedule, agent_seed);
    case AgentKind::dqn:
      return std::make_unique<DqnAgent>(shape, scenario.dqn, agent_seed);
    case AgentKind::fastdqn:
      if (!pretrained) throw std::logic_error("fastdqn requires hotbooted parameters");
      return std::make_unique<FastDqnAgent>(shape, scenario.dqn, pretrained->network,
                                            pretrained->clock, agent_seed);
  }
  throw std::logic_error("unknown agent kind");
}

EpisodeResult run_episode(const Scenario& scenario, AgentKind kind, int index,
                          const HotbootResult* pretrained) {
  const std::uint64_t seed = episode_seed(scenario, index);
  World world(scenario, seed);
  auto agent = make_agent(scenario, kind, seed, pretrained);
  const std::int64_t prelude = agent->prelude_slots();
  world.record_from(prelude);
  agent->play(world, prelude + scenario.slots_per_episode);
  EpisodeResult r;
  r.agent = kind;
  r.index = index;
  r.seed = seed;
  r.rows = world.take_rows();
  if (static_cast<int>(r.rows.size()) != scenario.slots_per_episode) {
    throw std::logic_error("episode produced " + std::to_string(r.rows.size()) + " rows, expected " +
                           std::to_string(scenario.slots_per_episode));
  }
  return r;
}

}  // namespace ajam
