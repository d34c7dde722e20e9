#include "ajam/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ajam::tinynet {

namespace {

double loss(const Network& net, const Matrix& inputs, const Matrix& weights) {
  return net.evaluate(inputs).cwiseProduct(weights).sum();
}

}  // namespace

GradCheckReport gradient_check(Network& net, const Matrix& inputs, const Matrix& output_weights,
                               const GradCheckOptions& options, Rng& rng) {
  net.zero_grad();
  net.forward_batch(inputs);
  net.backward(output_weights);
  const std::vector<bool> base_signature = net.relu_signature(inputs);

  GradCheckReport report;
  for (ParamView& p : net.parameters()) {
    TensorCheck tc;
    tc.name = p.name;
    std::vector<std::size_t> idx(p.value.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (options.max_per_tensor > 0 && idx.size() > options.max_per_tensor) {
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(options.max_per_tensor);
    }
    for (std::size_t i : idx) {
      const double saved = p.value[i];
      p.value[i] = saved + options.step;
      const double up = loss(net, inputs, output_weights);
      const bool up_ok = net.relu_signature(inputs) == base_signature;
      p.value[i] = saved - options.step;
      const double down = loss(net, inputs, output_weights);
      const bool down_ok = net.relu_signature(inputs) == base_signature;
      p.value[i] = saved;
      if (!up_ok || !down_ok) {
        ++tc.skipped;
        continue;
      }
      const double numeric = (up - down) / (2.0 * options.step);
      const double analytic = p.grad[i];
      const double denom =
          std::max({std::abs(numeric), std::abs(analytic), options.abs_floor});
      tc.max_rel_error = std::max(tc.max_rel_error, std::abs(numeric - analytic) / denom);
      ++tc.checked;
    }
    report.checked += tc.checked;
    report.skipped += tc.skipped;
    report.max_rel_error = std::max(report.max_rel_error, tc.max_rel_error);
    report.tensors.push_back(tc);
  }
  net.zero_grad();
  report.passed = report.checked > 0 && report.max_rel_error <= options.tolerance;
  return report;
}

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, double lo, double hi, Rng& rng) {
  Matrix m(rows, cols);
  std::uniform_real_distribution<double> d(lo, hi);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

// Moves biases off zero so ReLU units are not all decided by the weights.
void jitter_biases(Network& net, Rng& rng) {
  std::uniform_real_distribution<double> d(-0.1, 0.1);
  for (ParamView& p : net.parameters()) {
    if (p.name.find("bias") == std::string::npos) continue;
    for (double& v : p.value) v = d(rng);
  }
}

}  // namespace

GradCheckReport gradient_check_suite(int seeds, std::uint64_t seed_base,
                                     std::size_t default_net_samples,
                                     const GradCheckOptions& options) {
  GradCheckReport total;
  total.passed = true;
  for (int s = 0; s < seeds; ++s) {
    Rng rng = make_rng(seed_base, static_cast<std::uint64_t>(s));

    Network narrow({1, 6, 6},
                   {LayerSpec::conv(3, 3), LayerSpec::relu(), LayerSpec::conv(4, 2),
                    LayerSpec::relu(), LayerSpec::flatten(), LayerSpec::dense(8),
                    LayerSpec::relu(), LayerSpec::dense(5)},
                   rng);
    jitter_biases(narrow, rng);
    const Matrix in_a = random_matrix(2, 36, 0.0, 1.0, rng);
    const Matrix w_a = random_matrix(2, 5, -1.0, 1.0, rng);
    GradCheckOptions all = options;
    all.max_per_tensor = 0;
    GradCheckReport a = gradient_check(narrow, in_a, w_a, all, rng);

    Network full = Network::q_network(34, rng);
    jitter_biases(full, rng);
    const Matrix in_b = random_matrix(1, 36, 0.0, 1.0, rng);
    const Matrix w_b = random_matrix(1, 34, -1.0, 1.0, rng);
    GradCheckOptions sampled = options;
    sampled.max_per_tensor = default_net_samples;
    GradCheckReport b = gradient_check(full, in_b, w_b, sampled, rng);

    for (GradCheckReport* r : {&a, &b}) {
      total.tensors.insert(total.tensors.end(), r->tensors.begin(), r->tensors.end());
      total.checked += r->checked;
      total.skipped += r->skipped;
      total.max_rel_error = std::max(total.max_rel_error, r->max_rel_error);
      total.passed = total.passed && r->passed;
    }
  }
  return total;
}

}  // namespace ajam::tinynet
