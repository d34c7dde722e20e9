#include "ajam/harness/suite.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace ajam {

const AgentRun& SuiteResult::run(AgentKind kind) const {
  for (const auto& r : runs) {
    if (r.agent == kind) return r;
  }
  throw std::out_of_range("agent " + to_string(kind) + " not part of this suite");
}

Stat mean_and_std(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

SuiteResult run_suite(const Scenario& scenario, const SuiteOptions& options) {
  scenario.validate();
  const int episodes = options.episodes >= 0 ? options.episodes : scenario.n_episodes;
  SuiteResult result;
  result.scenario = scenario;
  result.scenario.n_episodes = episodes;

  std::optional<HotbootResult> pretrained;
  for (AgentKind k : scenario.agents) {
    if (k == AgentKind::fastdqn && !pretrained) pretrained = hotboot_for(scenario);
  }

  struct Task {
    std::size_t run;
    int episode;
  };
  std::vector<Task> tasks;
  for (std::size_t r = 0; r < scenario.agents.size(); ++r) {
    result.runs.push_back({scenario.agents[r], std::vector<EpisodeResult>(episodes)});
    for (int e = 0; e < episodes; ++e) tasks.push_back({r, e});
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      const Task task = tasks[t];
      const AgentKind kind = scenario.agents[task.run];
      try {
        EpisodeResult ep =
            run_episode(scenario, kind, task.episode, pretrained ? &*pretrained : nullptr);
        result.runs[task.run].episodes[task.episode] = std::move(ep);
        if (options.progress) {
          std::lock_guard lock(mu);
          options.progress(kind, task.episode);
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int threads = std::max(1, options.parallel);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

Curve moving_average_curve(const std::vector<EpisodeResult>& episodes, int window) {
  Curve c;
  if (episodes.empty()) return c;
  const std::size_t slots = episodes.front().rows.size();
  std::vector<std::vector<double>> sinr(episodes.size()), util(episodes.size());
  for (std::size_t e = 0; e < episodes.size(); ++e) {
    const auto& rows = episodes[e].rows;
    if (rows.size() != slots) throw std::invalid_argument("episodes differ in length");
    sinr[e].resize(slots);
    util[e].resize(slots);
    double s_sum = 0.0, u_sum = 0.0;
    for (std::size_t k = 0; k < slots; ++k) {
      s_sum += rows[k].sinr;
      u_sum += rows[k].utility;
      if (k >= static_cast<std::size_t>(window)) {
        s_sum -= rows[k - window].sinr;
        u_sum -= rows[k - window].utility;
      }
      const double n = static_cast<double>(std::min<std::size_t>(k + 1, window));
      sinr[e][k] = s_sum / n;
      util[e][k] = u_sum / n;
    }
  }
  std::vector<double> col(episodes.size());
  for (std::size_t k = 0; k < slots; ++k) {
    for (std::size_t e = 0; e < episodes.size(); ++e) col[e] = sinr[e][k];
    Stat s = mean_and_std(col);
    for (std::size_t e = 0; e < episodes.size(); ++e) col[e] = util[e][k];
    Stat u = mean_and_std(col);
    c.sinr_mean.push_back(s.mean);
    c.sinr_std.push_back(s.std);
    c.utility_mean.push_back(u.mean);
    c.utility_std.push_back(u.std);
  }
  return c;
}

SummaryStats summarize(const std::vector<EpisodeResult>& episodes, int window) {
  std::vector<double> sinr, util;
  for (const auto& ep : episodes) {
    const std::size_t n = ep.rows.size();
    const std::size_t w = std::min<std::size_t>(window, n);
    double s = 0.0, u = 0.0;
    for (std::size_t k = n - w; k < n; ++k) {
      s += ep.rows[k].sinr;
      u += ep.rows[k].utility;
    }
    sinr.push_back(w ? s / w : 0.0);
    util.push_back(w ? u / w : 0.0);
  }
  return {static_cast<int>(episodes.size()), mean_and_std(sinr), mean_and_std(util)};
}

}  // namespace ajam
