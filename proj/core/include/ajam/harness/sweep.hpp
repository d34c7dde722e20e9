#pragma once

#include <string>
#include <vector>

#include "ajam/harness/suite.hpp"

namespace ajam {

enum class SweepParam { channels, cp, jammer_move_prob };

std::string to_string(SweepParam p);
// Accepts "channels", "cp" and "jammer-move-prob"; throws ConfigError.
SweepParam sweep_param_from_string(const std::string& name);

// The scenario with one parameter replaced. "jammer-move-prob" makes every
// jammer mobile with the given relocation probability.
Scenario with_sweep_value(Scenario s, SweepParam param, double value);

struct SweepPoint {
  double value = 0.0;
  SuiteResult result;
};

std::vector<SweepPoint> run_sweep(const Scenario& base, SweepParam param,
                                  const std::vector<double>& values, const SuiteOptions& options);

// summary.csv keyed by (param, value) plus curves/<param>=<value>/<agent>.csv.
void write_sweep_outputs(const std::string& dir, SweepParam param,
                         const std::vector<SweepPoint>& points);

}  // namespace ajam
