#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "ajam/dqn.hpp"
#include "ajam/error.hpp"
#include "ajam/gradcheck.hpp"
#include "ajam/harness/csv.hpp"
#include "ajam/harness/episode.hpp"
#include "ajam/harness/scenario.hpp"
#include "ajam/harness/suite.hpp"
#include "ajam/harness/sweep.hpp"
#include "ajam/qlearn.hpp"

namespace ajam {

namespace {

struct Globals {
  std::int64_t seed = -1;
  bool quiet = false;
};

std::string default_out_dir(const std::string& leaf) {
  const char* root = std::getenv(kOutDirEnv);
  std::filesystem::path base = root && *root ? root : "ajam-out";
  return (base / leaf).string();
}

Scenario load_with_overrides(const std::string& ref, const Globals& g) {
  Scenario s = load_scenario(ref);
  if (g.seed >= 0) s.seed = static_cast<std::uint64_t>(g.seed);
  return s;
}

std::vector<AgentKind> parse_agents(const std::vector<std::string>& names) {
  std::vector<AgentKind> out;
  for (const auto& n : names) out.push_back(agent_kind_from_string(n));
  return out;
}

void save_checkpoint(const Agent& agent, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  const fs::path root(dir);
  if (auto* q = dynamic_cast<const QLearningAgent*>(&agent)) {
    std::ostringstream os;
    q->table().save(os);
    write_text_file((root / "qtable.txt").string(), os.str());
  }
  const DqnLearner* learner = nullptr;
  if (auto* d = dynamic_cast<const DqnAgent*>(&agent)) learner = &d->learner();
  if (auto* f = dynamic_cast<const FastDqnAgent*>(&agent)) learner = &f->learner();
  if (learner) {
    learner->network().save_file((root / "network.txt").string());
    std::ostringstream os;
    save_macros(os, learner->macros(), learner->network().output_size());
    write_text_file((root / "macros.txt").string(), os.str());
  }
}

int cmd_run(const std::string& ref, const std::string& agent_name, int episode, int print_every,
            const std::string& csv, const std::string& checkpoint, const Globals& g,
            std::ostream& out) {
  Scenario s = load_with_overrides(ref, g);
  const AgentKind kind = agent_kind_from_string(agent_name);
  std::optional<HotbootResult> pre;
  if (kind == AgentKind::fastdqn) pre = hotboot_for(s);

  const std::uint64_t seed = episode_seed(s, episode);
  World world(s, seed);
  auto agent = make_agent(s, kind, seed, pre ? &*pre : nullptr);
  world.record_from(agent->prelude_slots());
  agent->play(world, agent->prelude_slots() + s.slots_per_episode);

  EpisodeResult ep{kind, episode, seed, world.take_rows()};
  if (!g.quiet) {
    out << "scenario=" << s.name << " agent=" << agent_name << " episode=" << episode
        << " seed=" << seed << "\n";
    out << "slot  sinr(avg)  utility(avg)\n";
    double s_sum = 0, u_sum = 0;
    int n = 0;
    for (const auto& r : ep.rows) {
      s_sum += r.sinr;
      u_sum += r.utility;
      ++n;
      if (print_every > 0 && (r.slot + 1) % print_every == 0) {
        out << std::setw(5) << r.slot + 1 << "  " << std::setw(9) << std::fixed
            << std::setprecision(4) << s_sum / n << "  " << std::setw(12) << u_sum / n << "\n";
        s_sum = u_sum = 0;
        n = 0;
      }
    }
  }
  const SummaryStats st = summarize({ep}, s.summary_window);
  out << std::defaultfloat << "summary last=" << s.summary_window
      << " sinr=" << format_double(st.sinr.mean) << " utility=" << format_double(st.utility.mean)
      << "\n";
  if (!csv.empty()) {
    std::ostringstream os;
    write_episode_csv(os, ep);
    write_text_file(csv, os.str());
  }
  if (!checkpoint.empty()) save_checkpoint(*agent, checkpoint);
  return kExitOk;
}

ProgressFn progress_printer(const Globals& g, std::ostream& err, int total) {
  if (g.quiet) return {};
  auto done = std::make_shared<int>(0);
  return [&err, done, total](AgentKind kind, int episode) {
    ++*done;
    err << "[" << *done << "/" << total << "] " << to_string(kind) << " episode " << episode
        << "\n";
  };
}

int cmd_suite(const std::vector<std::string>& refs, int episodes, std::string out_dir,
              int parallel, const std::vector<std::string>& agents, const Globals& g,
              std::ostream& out, std::ostream& err) {
  std::vector<Scenario> scenarios;
  int total = 0;
  for (const auto& ref : refs) {
    Scenario s = load_with_overrides(ref, g);
    if (!agents.empty()) s.agents = parse_agents(agents);
    if (episodes > 0) s.n_episodes = episodes;
    s.validate();
    total += s.n_episodes * static_cast<int>(s.agents.size());
    scenarios.push_back(std::move(s));
  }
  if (out_dir.empty()) {
    std::string leaf;
    for (const auto& s : scenarios) leaf += (leaf.empty() ? "" : "+") + s.name;
    out_dir = default_out_dir(leaf);
  }
  SuiteOptions opt;
  opt.parallel = parallel;
  opt.progress = progress_printer(g, err, total);
  std::vector<SuiteResult> results;
  for (const auto& s : scenarios) {
    opt.episodes = s.n_episodes;
    results.push_back(run_suite(s, opt));
  }
  write_suite_outputs(out_dir, results);
  for (const auto& r : results) {
    for (const auto& run : r.runs) {
      const SummaryStats st = summarize(run.episodes, r.scenario.summary_window);
      out << std::left << std::setw(14) << r.scenario.name << std::setw(8) << to_string(run.agent)
          << " sinr=" << std::fixed << std::setprecision(4) << st.sinr.mean << " (sd "
          << st.sinr.std << ")"
          << " utility=" << st.utility.mean << " (sd " << st.utility.std << ")"
          << std::defaultfloat << "\n";
    }
  }
  out << "wrote " << out_dir << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& ref, const std::string& param_name,
              const std::vector<double>& values, int episodes, std::string out_dir, int parallel,
              const std::vector<std::string>& agents, const Globals& g, std::ostream& out,
              std::ostream& err) {
  Scenario s = load_with_overrides(ref, g);
  const SweepParam param = sweep_param_from_string(param_name);
  if (!agents.empty()) s.agents = parse_agents(agents);
  if (episodes > 0) s.n_episodes = episodes;
  if (values.empty()) throw ConfigError("values", "at least one value required");
  if (out_dir.empty()) out_dir = default_out_dir(s.name + "-sweep-" + param_name);
  SuiteOptions opt;
  opt.episodes = s.n_episodes;
  opt.parallel = parallel;
  opt.progress = progress_printer(
      g, err, s.n_episodes * static_cast<int>(s.agents.size() * values.size()));
  const auto points = run_sweep(s, param, values, opt);
  write_sweep_outputs(out_dir, param, points);
  for (const auto& pt : points) {
    for (const auto& run : pt.result.runs) {
      const SummaryStats st = summarize(run.episodes, s.summary_window);
      out << param_name << "=" << format_double(pt.value) << " " << std::left << std::setw(8)
          << to_string(run.agent) << " sinr=" << std::fixed << std::setprecision(4)
          << st.sinr.mean << " utility=" << st.utility.mean << std::defaultfloat << "\n";
    }
  }
  out << "wrote " << out_dir << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& ref, bool print, const Globals& g, std::ostream& out) {
  Scenario s = load_with_overrides(ref, g);
  if (print) {
    out << dump_scenario(s);
  } else if (!g.quiet) {
    out << "ok: " << s.name << " (" << s.env.n_channels << " channels, " << s.jammers.size()
        << " jammers, " << s.topology.locations.size() << " locations)\n";
  }
  return kExitOk;
}

int cmd_gradcheck(int seeds, int samples, const Globals& g, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t base = g.seed >= 0 ? static_cast<std::uint64_t>(g.seed) : 1;
  const auto report = tinynet::gradient_check_suite(seeds, base, samples);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!g.quiet) {
    for (const auto& t : report.tensors) {
      out << std::left << std::setw(14) << t.name << " checked=" << t.checked
          << " skipped=" << t.skipped << " max_rel_error=" << std::scientific
          << std::setprecision(3) << t.max_rel_error << std::defaultfloat << "\n";
    }
  }
  out << "gradcheck seeds=" << seeds << " checked=" << report.checked
      << " skipped=" << report.skipped << " max_rel_error=" << std::scientific
      << std::setprecision(3) << report.max_rel_error << std::defaultfloat << " time=" << std::fixed
      << std::setprecision(2) << secs << "s " << (report.passed ? "PASS" : "FAIL") << "\n";
  return report.passed ? kExitOk : kExitRuntime;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anti-jamming game simulator and learning-agent harness", "ajam"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Override the scenario seed")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", g.quiet, "Suppress progress output");

  std::string scenario_ref;
  std::string out_dir;
  int episodes = 0, parallel = 1;
  std::vector<std::string> agents;

  auto* run = app.add_subcommand("run", "Play one episode and print its trace");
  std::string agent_name = "fastdqn", csv, checkpoint;
  int episode = 0, print_every = 100;
  run->add_option("scenario", scenario_ref, "Scenario file or built-in name")->required();
  run->add_option("--agent", agent_name, "greedy, qlearn, dqn or fastdqn");
  run->add_option("--episode", episode, "Episode index (seed = seed + index)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--every", print_every, "Print a moving summary every N slots");
  run->add_option("--csv", csv, "Write the per-slot rows to this file");
  run->add_option("--checkpoint", checkpoint, "Write the trained agent state into this directory");

  auto* suite = app.add_subcommand("suite", "Run every agent over many seeded episodes");
  std::vector<std::string> suite_refs;
  suite->add_option("scenario", suite_refs, "Scenario files or built-in names")->required();
  suite->add_option("--episodes", episodes, "Episodes per agent")->check(CLI::PositiveNumber);
  suite->add_option("--out", out_dir, std::string("Output directory (default $") + kOutDirEnv +
                                          "/<scenario>, else ajam-out/<scenario>)");
  suite->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  suite->add_option("--agents", agents, "Subset of agents")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Run the suite across values of one parameter");
  std::string param;
  std::vector<double> values;
  std::string sweep_ref = "apartment";
  sweep->add_option("scenario", sweep_ref, "Scenario file or built-in name (default apartment)");
  sweep->add_option("--param", param, "channels, cp or jammer-move-prob")->required();
  sweep->add_option("--values", values, "Values to sweep")->required()->delimiter(',');
  sweep->add_option("--episodes", episodes, "Episodes per agent and value")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--agents", agents, "Subset of agents")->delimiter(',');

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  bool print = false;
  validate->add_option("scenario", scenario_ref, "Scenario file or built-in name")->required();
  validate->add_flag("--print", print, "Print the resolved scenario as YAML");

  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference check of tinynet");
  int seeds = 10, samples = 200;
  gradcheck->add_option("--seeds", seeds, "Random seeds")->check(CLI::PositiveNumber);
  gradcheck->add_option("--samples", samples, "Parameters sampled per tensor of the full net")
      ->check(CLI::PositiveNumber);

  for (auto* sub : {run, suite, sweep, validate, gradcheck}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(scenario_ref, agent_name, episode, print_every, csv, checkpoint, g, out);
    if (*suite) return cmd_suite(suite_refs, episodes, out_dir, parallel, agents, g, out, err);
    if (*sweep) {
      return cmd_sweep(sweep_ref, param, values, episodes, out_dir, parallel, agents, g, out, err);
    }
    if (*validate) return cmd_validate(scenario_ref, print, g, out);
    if (*gradcheck) return cmd_gradcheck(seeds, samples, g, out);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace ajam
