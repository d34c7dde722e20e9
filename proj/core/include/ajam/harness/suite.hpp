#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ajam/harness/episode.hpp"

namespace ajam {

struct Curve {
  std::vector<double> sinr_mean, sinr_std, utility_mean, utility_std;
};

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
};

struct AgentRun {
  AgentKind agent = AgentKind::greedy;
  std::vector<EpisodeResult> episodes;  // in episode-index order
};

struct SuiteResult {
  Scenario scenario;
  std::vector<AgentRun> runs;

  const AgentRun& run(AgentKind kind) const;
};

using ProgressFn = std::function<void(AgentKind, int episode)>;

struct SuiteOptions {
  int episodes = -1;  // < 0 uses the scenario's n_episodes
  int parallel = 1;
  ProgressFn progress;
};

SuiteResult run_suite(const Scenario& scenario, const SuiteOptions& options);

// Per-episode trailing moving average over `window` slots (shorter at the
// start), then mean and sample standard deviation across episodes.
Curve moving_average_curve(const std::vector<EpisodeResult>& episodes, int window);

// Per-episode mean over the last `window` slots, then across episodes.
struct SummaryStats {
  int episodes = 0;
  Stat sinr;
  Stat utility;
};
SummaryStats summarize(const std::vector<EpisodeResult>& episodes, int window);

Stat mean_and_std(const std::vector<double>& values);

}  // namespace ajam
