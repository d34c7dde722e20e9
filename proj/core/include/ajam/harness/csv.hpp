#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ajam/harness/suite.hpp"

namespace ajam {

// Shortest decimal text that round-trips the double.
std::string format_double(double v);

void write_curve_csv(std::ostream& os, const Curve& curve, int window, const std::string& label);

struct SummaryRecord {
  std::string scenario;
  std::string agent;
  std::string param;  // empty outside sweeps
  std::string value;
  SummaryStats stats;
};

void write_summary_csv(std::ostream& os, const std::vector<SummaryRecord>& rows);
void write_episode_csv(std::ostream& os, const EpisodeResult& episode);
std::vector<MetricsRow> read_episode_csv(std::istream& is);

// Writes, under `dir` (created if missing):
//   curves/<scenario>/<agent>.csv        moving-average curves
//   episodes/<scenario>/<agent>-<i>.csv  raw per-slot rows
//   scenarios/<scenario>.yaml            the resolved scenario
//   summary.csv                          one row per (scenario, agent)
// Throws std::runtime_error naming the path on I/O failure.
void write_suite_outputs(const std::string& dir, const std::vector<SuiteResult>& results);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ajam
