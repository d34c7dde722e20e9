#pragma once

// Central finite-difference verification of tinynet's analytic gradients.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ajam/tinynet.hpp"

namespace ajam::tinynet {

struct GradCheckOptions {
  double step = 1e-4;
  double tolerance = 1e-3;
  // Denominator floor of the relative error, so that exact zeros compare.
  double abs_floor = 1e-7;
  // Parameters checked per tensor; 0 checks all of them.
  std::size_t max_per_tensor = 0;
};

struct TensorCheck {
  std::string name;
  std::size_t checked = 0;
  // Perturbations that flipped a ReLU unit; the loss has a kink there.
  std::size_t skipped = 0;
  double max_rel_error = 0.0;
};

struct GradCheckReport {
  std::vector<TensorCheck> tensors;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  double max_rel_error = 0.0;
  bool passed = false;
};

// Loss = sum(output .* weights). Compares d(loss)/d(theta) from backward with
// (loss(theta + h) - loss(theta - h)) / 2h for each checked parameter.
GradCheckReport gradient_check(Network& net, const Matrix& inputs, const Matrix& output_weights,
                               const GradCheckOptions& options, Rng& rng);

// Per seed: a narrow network with every layer type checked exhaustively, and
// the default Q-network with `default_net_samples` parameters per tensor.
GradCheckReport gradient_check_suite(int seeds, std::uint64_t seed_base,
                                     std::size_t default_net_samples = 200,
                                     const GradCheckOptions& options = {});

}  // namespace ajam::tinynet
