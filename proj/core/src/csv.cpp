#include "ajam/harness/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ajam {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, end);
}

void write_curve_csv(std::ostream& os, const Curve& c, int window, const std::string& label) {
  os << "# window=" << window << " " << label << "\n";
  os << "slot,sinr_mean,sinr_std,utility_mean,utility_std\n";
  for (std::size_t k = 0; k < c.sinr_mean.size(); ++k) {
    os << k << ',' << format_double(c.sinr_mean[k]) << ',' << format_double(c.sinr_std[k]) << ','
       << format_double(c.utility_mean[k]) << ',' << format_double(c.utility_std[k]) << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRecord>& rows) {
  os << "scenario,agent,param,value,episodes,sinr_mean,sinr_std,utility_mean,utility_std\n";
  for (const auto& r : rows) {
    os << r.scenario << ',' << r.agent << ',' << r.param << ',' << r.value << ','
       << r.stats.episodes << ',' << format_double(r.stats.sinr.mean) << ','
       << format_double(r.stats.sinr.std) << ',' << format_double(r.stats.utility.mean) << ','
       << format_double(r.stats.utility.std) << '\n';
  }
}

void write_episode_csv(std::ostream& os, const EpisodeResult& ep) {
  os << "# agent=" << to_string(ep.agent) << " episode=" << ep.index << " seed=" << ep.seed << "\n";
  os << "slot,sinr,utility,action,moved,silent\n";
  for (const auto& r : ep.rows) {
    os << r.slot << ',' << format_double(r.sinr) << ',' << format_double(r.utility) << ','
       << r.action << ',' << (r.moved ? 1 : 0) << ',' << (r.silent ? 1 : 0) << '\n';
  }
}

std::vector<MetricsRow> read_episode_csv(std::istream& is) {
  std::vector<MetricsRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string f[6];
    for (auto& x : f) {
      if (!std::getline(ss, x, ',')) throw std::runtime_error("episode csv: short row: " + line);
    }
    MetricsRow r;
    std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.slot);
    std::from_chars(f[1].data(), f[1].data() + f[1].size(), r.sinr);
    std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.utility);
    std::from_chars(f[3].data(), f[3].data() + f[3].size(), r.action);
    r.moved = f[4] == "1";
    r.silent = f[5] == "1";
    rows.push_back(r);
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

template <typename Fn>
void write_with(const std::filesystem::path& path, Fn fn) {
  std::ostringstream ss;
  fn(ss);
  write_text_file(path.string(), ss.str());
}

}  // namespace

void write_suite_outputs(const std::string& dir, const std::vector<SuiteResult>& results) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  auto make_dir = [](const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create " + p.string() + ": " + ec.message());
  };
  make_dir(root / "scenarios");

  std::vector<SummaryRecord> summary;
  for (const SuiteResult& result : results) {
    const Scenario& sc = result.scenario;
    make_dir(root / "curves" / sc.name);
    make_dir(root / "episodes" / sc.name);
    for (const auto& run : result.runs) {
      const std::string agent = to_string(run.agent);
      const Curve curve = moving_average_curve(run.episodes, sc.curve_window);
      write_with(root / "curves" / sc.name / (agent + ".csv"), [&](std::ostream& os) {
        write_curve_csv(os, curve, sc.curve_window,
                        "scenario=" + sc.name + " agent=" + agent +
                            " episodes=" + std::to_string(run.episodes.size()));
      });
      for (const auto& ep : run.episodes) {
        write_with(root / "episodes" / sc.name / (agent + "-" + std::to_string(ep.index) + ".csv"),
                   [&](std::ostream& os) { write_episode_csv(os, ep); });
      }
      summary.push_back({sc.name, agent, "", "", summarize(run.episodes, sc.summary_window)});
    }
    write_text_file((root / "scenarios" / (sc.name + ".yaml")).string(), dump_scenario(sc));
  }
  write_with(root / "summary.csv", [&](std::ostream& os) { write_summary_csv(os, summary); });
}

}  // namespace ajam
