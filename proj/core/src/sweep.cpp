#include "ajam/harness/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "ajam/error.hpp"
#include "ajam/harness/csv.hpp"

namespace ajam {

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::channels: return "channels";
    case SweepParam::cp: return "cp";
    case SweepParam::jammer_move_prob: return "jammer-move-prob";
  }
  return "?";
}

SweepParam sweep_param_from_string(const std::string& name) {
  for (SweepParam p : {SweepParam::channels, SweepParam::cp, SweepParam::jammer_move_prob}) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("param", "expected channels, cp or jammer-move-prob, got '" + name + "'");
}

Scenario with_sweep_value(Scenario s, SweepParam param, double value) {
  switch (param) {
    case SweepParam::channels:
      if (value < 1 || value != std::floor(value)) {
        throw ConfigError("values", "channel counts must be positive integers");
      }
      s.env.n_channels = static_cast<int>(value);
      break;
    case SweepParam::cp:
      s.env.cost_tx_unit = value;
      break;
    case SweepParam::jammer_move_prob:
      for (auto& j : s.jammers) {
        j.mobile = true;
        j.move_prob = value;
      }
      break;
  }
  s.sync();
  s.validate();
  return s;
}

std::vector<SweepPoint> run_sweep(const Scenario& base, SweepParam param,
                                  const std::vector<double>& values, const SuiteOptions& options) {
  std::vector<Scenario> scenarios;
  for (double v : values) scenarios.push_back(with_sweep_value(base, param, v));
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({values[i], run_suite(scenarios[i], options)});
  }
  return out;
}

void write_sweep_outputs(const std::string& dir, SweepParam param,
                         const std::vector<SweepPoint>& points) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::vector<SummaryRecord> summary;
  for (const auto& pt : points) {
    const std::string value = format_double(pt.value);
    const fs::path sub = root / "curves" / (to_string(param) + "=" + value);
    std::error_code ec;
    fs::create_directories(sub, ec);
    if (ec) throw std::runtime_error("cannot create " + sub.string() + ": " + ec.message());
    const Scenario& sc = pt.result.scenario;
    for (const auto& run : pt.result.runs) {
      const std::string agent = to_string(run.agent);
      std::ostringstream os;
      write_curve_csv(os, moving_average_curve(run.episodes, sc.curve_window), sc.curve_window,
                      "scenario=" + sc.name + " agent=" + agent + " " + to_string(param) + "=" +
                          value + " episodes=" + std::to_string(run.episodes.size()));
      write_text_file((sub / (agent + ".csv")).string(), os.str());
      summary.push_back({sc.name, agent, to_string(param), value,
                         summarize(run.episodes, sc.summary_window)});
    }
  }
  std::ostringstream os;
  write_summary_csv(os, summary);
  write_text_file((root / "summary.csv").string(), os.str());
}

}  // namespace ajam
