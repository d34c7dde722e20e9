#pragma once

// tinynet: a small CNN engine (valid 2-D convolution, ReLU, flatten, dense)
// with reverse-mode gradients and plain SGD. Double precision throughout.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ajam/rng.hpp"

namespace ajam::tinynet {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;  // row-major

  static Tensor zeros(std::vector<int> shape);
  std::size_t size() const { return data.size(); }
};

std::size_t shape_size(std::span<const int> shape);
std::string shape_string(std::span<const int> shape);

enum class LayerKind { conv, relu, flatten, dense };

struct LayerSpec {
  LayerKind kind = LayerKind::relu;
  int filters = 0;  // conv
  int kernel = 0;   // conv
  int stride = 1;   // conv
  int units = 0;    // dense

  static LayerSpec conv(int filters, int kernel, int stride = 1) {
    return {LayerKind::conv, filters, kernel, stride, 0};
  }
  static LayerSpec relu() { return {LayerKind::relu}; }
  static LayerSpec flatten() { return {LayerKind::flatten}; }
  static LayerSpec dense(int units) { return {LayerKind::dense, 0, 0, 1, units}; }
};

// The Q-network layout: Conv 20@3x3 -> ReLU -> Conv 40@2x2 -> ReLU ->
// Flatten(360) -> FC 128 -> ReLU -> FC out_dim, on a 1x6x6 input.
std::vector<LayerSpec> default_layers(int out_dim);

struct SgdConfig {
  double learning_rate = 0.01;
  int minibatch = 32;
  // Rescales the full gradient to this L2 norm when it is larger; 0 disables.
  double max_grad_norm = 0.0;

  void validate() const;
};

// View of one parameter tensor and its gradient.
struct ParamView {
  std::string name;
  std::span<double> value;
  std::span<double> grad;
};

class Network {
 public:
  Network(std::vector<int> input_shape, std::vector<LayerSpec> specs, Rng& rng);

  // Default layout with uniform(+-1/sqrt(fan_in)) weights and zero biases.
  static Network q_network(int out_dim, Rng& rng);

  const std::vector<int>& input_shape() const { return input_shape_; }
  int input_size() const { return static_cast<int>(shape_size(input_shape_)); }
  int output_size() const;
  std::size_t layer_count() const { return layers_.size(); }
  const LayerSpec& layer_spec(std::size_t i) const { return layers_[i].spec; }
  const std::vector<int>& layer_output_shape(std::size_t i) const { return layers_[i].out_shape; }
  std::size_t parameter_count() const;

  // Single-sample forward; caches activations for backward.
  Tensor forward(const Tensor& input);
  // Batched forward, one sample per row; caches activations for backward.
  const Matrix& forward_batch(const Matrix& inputs);
  // Forward without touching the cache.
  Matrix evaluate(const Matrix& inputs) const;
  // On/off state of every ReLU unit for `inputs`, in layer order.
  std::vector<bool> relu_signature(const Matrix& inputs) const;

  // Accumulates d(loss)/d(theta) given d(loss)/d(output) for the cached batch.
  void backward(const Matrix& output_grad);
  void backward(const Tensor& output_grad);

  void zero_grad();
  // theta <- theta - learning_rate * grad, then zeroes the gradients.
  void sgd_step(const SgdConfig& cfg);

  // Replaces the final dense layer's width; surviving rows are kept and new
  // rows are initialized like a fresh layer.
  void resize_head(int new_out_dim, Rng& rng);

  std::vector<ParamView> parameters();

  void save(std::ostream& os) const;
  static Network load(std::istream& is);
  void save_file(const std::string& path) const;
  static Network load_file(const std::string& path);

  friend bool operator==(const Network& a, const Network& b);

 private:
  struct Layer {
    LayerSpec spec;
    std::vector<int> in_shape;
    std::vector<int> out_shape;
    Matrix weight;  // conv: F x (C*k*k); dense: out x in
    Vector bias;
    Matrix weight_grad;
    Vector bias_grad;
  };

  struct Cache {
    std::vector<Matrix> inputs;  // input activation per layer
    std::vector<Matrix> cols;    // im2col buffer per conv layer
    Matrix output;
  };

  Network() = default;
  void build(Rng* rng);
  void run(const Matrix& inputs, Cache& cache) const;

  std::vector<int> input_shape_;
  std::vector<Layer> layers_;
  Cache cache_;
  bool has_cache_ = false;
};

}  // namespace ajam::tinynet
