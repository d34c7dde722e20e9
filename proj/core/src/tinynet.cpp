#include "ajam/tinynet.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ajam::tinynet {

namespace {

constexpr const char* kSnapshotMagic = "tinynet-snapshot";
constexpr int kSnapshotVersion = 1;

const char* kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::conv: return "conv";
    case LayerKind::relu: return "relu";
    case LayerKind::flatten: return "flatten";
    case LayerKind::dense: return "dense";
  }
  return "?";
}

void init_uniform(Matrix& w, int fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
}

// Rows of `in` are C x H x W images; each row of `cols` is one k x k patch
// (channel-major), ordered sample-major then output position.
void im2col(const Matrix& in, int C, int H, int W, int k, int s, int OH, int OW, Matrix& cols) {
  const Eigen::Index B = in.rows();
  const int P = OH * OW;
  const int K = C * k * k;
  cols.resize(B * P, K);
  for (Eigen::Index b = 0; b < B; ++b) {
    const double* x = in.data() + b * in.cols();
    for (int i = 0; i < OH; ++i) {
      for (int j = 0; j < OW; ++j) {
        double* dst = cols.data() + (b * P + i * OW + j) * K;
        for (int c = 0; c < C; ++c) {
          const double* plane = x + c * H * W;
          for (int ki = 0; ki < k; ++ki) {
            const double* row = plane + (i * s + ki) * W + j * s;
            for (int kj = 0; kj < k; ++kj) *dst++ = row[kj];
          }
        }
      }
    }
  }
}

void col2im_add(const Matrix& cols, int C, int H, int W, int k, int s, int OH, int OW,
                Matrix& din) {
  const Eigen::Index B = din.rows();
  const int P = OH * OW;
  const int K = C * k * k;
  for (Eigen::Index b = 0; b < B; ++b) {
    double* x = din.data() + b * din.cols();
    for (int i = 0; i < OH; ++i) {
      for (int j = 0; j < OW; ++j) {
        const double* src = cols.data() + (b * P + i * OW + j) * K;
        for (int c = 0; c < C; ++c) {
          double* plane = x + c * H * W;
          for (int ki = 0; ki < k; ++ki) {
            double* row = plane + (i * s + ki) * W + j * s;
            for (int kj = 0; kj < k; ++kj) row[kj] += *src++;
          }
        }
      }
    }
  }
}

}  // namespace

Tensor Tensor::zeros(std::vector<int> shape) {
  Tensor t;
  t.data.assign(shape_size(shape), 0.0);
  t.shape = std::move(shape);
  return t;
}

std::size_t shape_size(std::span<const int> shape) {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

std::string shape_string(std::span<const int> shape) {
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(shape[i]);
  }
  return s;
}

std::vector<LayerSpec> default_layers(int out_dim) {
  return {LayerSpec::conv(20, 3), LayerSpec::relu(),       LayerSpec::conv(40, 2),
          LayerSpec::relu(),      LayerSpec::flatten(),    LayerSpec::dense(128),
          LayerSpec::relu(),      LayerSpec::dense(out_dim)};
}

void SgdConfig::validate() const {
  if (!(learning_rate > 0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("sgd.learning_rate must be > 0");
  }
  if (minibatch < 1) throw std::invalid_argument("sgd.minibatch must be >= 1");
  if (!(max_grad_norm >= 0) || !std::isfinite(max_grad_norm)) {
    throw std::invalid_argument("sgd.max_grad_norm must be >= 0");
  }
}

Network::Network(std::vector<int> input_shape, std::vector<LayerSpec> specs, Rng& rng)
    : input_shape_(std::move(input_shape)) {
  layers_.resize(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) layers_[i].spec = specs[i];
  build(&rng);
}

Network Network::q_network(int out_dim, Rng& rng) {
  return Network({1, 6, 6}, default_layers(out_dim), rng);
}

void Network::build(Rng* rng) {
  std::vector<int> shape = input_shape_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Layer& L = layers_[i];
    L.in_shape = shape;
    switch (L.spec.kind) {
      case LayerKind::conv: {
        if (shape.size() != 3) {
          throw std::invalid_argument("conv layer " + std::to_string(i) + " needs a CxHxW input, got " +
                                      shape_string(shape));
        }
        const int C = shape[0], H = shape[1], W = shape[2];
        const int k = L.spec.kernel, s = L.spec.stride;
        if (L.spec.filters < 1 || k < 1 || s < 1 || k > H || k > W || (H - k) % s || (W - k) % s) {
          throw std::invalid_argument("conv layer " + std::to_string(i) + " does not tile input " +
                                      shape_string(shape));
        }
        L.out_shape = {L.spec.filters, (H - k) / s + 1, (W - k) / s + 1};
        if (rng) {
          L.weight.resize(L.spec.filters, C * k * k);
          init_uniform(L.weight, C * k * k, *rng);
          L.bias = Vector::Zero(L.spec.filters);
        }
        break;
      }
      case LayerKind::relu:
        L.out_shape = shape;
        break;
      case LayerKind::flatten:
        L.out_shape = {static_cast<int>(shape_size(shape))};
        break;
      case LayerKind::dense: {
        if (shape.size() != 1) {
          throw std::invalid_argument("dense layer " + std::to_string(i) + " needs a flat input, got " +
                                      shape_string(shape));
        }
        if (L.spec.units < 1) throw std::invalid_argument("dense layer needs >= 1 unit");
        L.out_shape = {L.spec.units};
        if (rng) {
          L.weight.resize(L.spec.units, shape[0]);
          init_uniform(L.weight, shape[0], *rng);
          L.bias = Vector::Zero(L.spec.units);
        }
        break;
      }
    }
    L.weight_grad = Matrix::Zero(L.weight.rows(), L.weight.cols());
    L.bias_grad = Vector::Zero(L.bias.size());
    shape = L.out_shape;
  }
  has_cache_ = false;
}

int Network::output_size() const {
  return layers_.empty() ? input_size() : static_cast<int>(shape_size(layers_.back().out_shape));
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& L : layers_) n += L.weight.size() + L.bias.size();
  return n;
}

void Network::run(const Matrix& inputs, Cache& cache) const {
  if (inputs.cols() != input_size()) {
    throw std::invalid_argument("input has " + std::to_string(inputs.cols()) + " values, expected " +
                                shape_string(input_shape_));
  }
  const std::size_t n = layers_.size();
  cache.inputs.resize(n + 1);
  cache.cols.resize(n);
  cache.inputs[0] = inputs;
  for (std::size_t i = 0; i < n; ++i) {
    const Layer& L = layers_[i];
    const Matrix& in = cache.inputs[i];
    Matrix& out = cache.inputs[i + 1];
    switch (L.spec.kind) {
      case LayerKind::conv: {
        const int C = L.in_shape[0], H = L.in_shape[1], W = L.in_shape[2];
        const int F = L.out_shape[0], OH = L.out_shape[1], OW = L.out_shape[2];
        const int P = OH * OW;
        im2col(in, C, H, W, L.spec.kernel, L.spec.stride, OH, OW, cache.cols[i]);
        Matrix y;
        y.noalias() = cache.cols[i] * L.weight.transpose();
        out.resize(in.rows(), static_cast<Eigen::Index>(F) * P);
        for (Eigen::Index b = 0; b < in.rows(); ++b) {
          for (int p = 0; p < P; ++p) {
            for (int f = 0; f < F; ++f) out(b, f * P + p) = y(b * P + p, f) + L.bias[f];
          }
        }
        break;
      }
      case LayerKind::relu:
        out = in.cwiseMax(0.0);
        break;
      case LayerKind::flatten:
        out = in;
        break;
      case LayerKind::dense:
        out.noalias() = in * L.weight.transpose();
        out.rowwise() += L.bias.transpose();
        break;
    }
  }
  cache.output = cache.inputs[n];
}

Tensor Network::forward(const Tensor& input) {
  if (input.shape != input_shape_ || input.data.size() != static_cast<std::size_t>(input_size())) {
    throw std::invalid_argument("input shape " + shape_string(input.shape) + " does not match " +
                                shape_string(input_shape_));
  }
  Matrix row = Eigen::Map<const Matrix>(input.data.data(), 1, input_size());
  const Matrix& out = forward_batch(row);
  Tensor t;
  t.shape = {output_size()};
  t.data.assign(out.data(), out.data() + out.size());
  return t;
}

const Matrix& Network::forward_batch(const Matrix& inputs) {
  run(inputs, cache_);
  has_cache_ = true;
  return cache_.output;
}

Matrix Network::evaluate(const Matrix& inputs) const {
  Cache scratch;
  run(inputs, scratch);
  return std::move(scratch.output);
}

std::vector<bool> Network::relu_signature(const Matrix& inputs) const {
  Cache scratch;
  run(inputs, scratch);
  std::vector<bool> bits;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].spec.kind != LayerKind::relu) continue;
    const Matrix& pre = scratch.inputs[i];
    for (Eigen::Index j = 0; j < pre.size(); ++j) bits.push_back(pre.data()[j] > 0.0);
  }
  return bits;
}

void Network::backward(const Matrix& output_grad) {
  if (!has_cache_) throw std::logic_error("backward called before forward");
  if (output_grad.rows() != cache_.output.rows() || output_grad.cols() != cache_.output.cols()) {
    throw std::invalid_argument("output gradient shape does not match the cached forward pass");
  }
  Matrix grad = output_grad;
  Matrix next;
  for (std::size_t ii = layers_.size(); ii-- > 0;) {
    Layer& L = layers_[ii];
    const Matrix& in = cache_.inputs[ii];
    const bool need_input_grad = ii > 0;
    switch (L.spec.kind) {
      case LayerKind::conv: {
        const int C = L.in_shape[0], H = L.in_shape[1], W = L.in_shape[2];
        const int F = L.out_shape[0], OH = L.out_shape[1], OW = L.out_shape[2];
        const int P = OH * OW;
        const Eigen::Index B = in.rows();
        Matrix dy(B * P, F);
        for (Eigen::Index b = 0; b < B; ++b) {
          for (int p = 0; p < P; ++p) {
            for (int f = 0; f < F; ++f) dy(b * P + p, f) = grad(b, f * P + p);
          }
        }
        L.weight_grad.noalias() += dy.transpose() * cache_.cols[ii];
        L.bias_grad += dy.colwise().sum().transpose();
        if (need_input_grad) {
          Matrix dcols;
          dcols.noalias() = dy * L.weight;
          next = Matrix::Zero(B, in.cols());
          col2im_add(dcols, C, H, W, L.spec.kernel, L.spec.stride, OH, OW, next);
        }
        break;
      }
      case LayerKind::relu:
        next = grad.cwiseProduct((in.array() > 0.0).cast<double>().matrix());
        break;
      case LayerKind::flatten:
        next = grad;
        break;
      case LayerKind::dense:
        L.weight_grad.noalias() += grad.transpose() * in;
        L.bias_grad += grad.colwise().sum().transpose();
        if (need_input_grad) next.noalias() = grad * L.weight;
        break;
    }
    if (need_input_grad) grad.swap(next);
  }
}

void Network::backward(const Tensor& output_grad) {
  if (output_grad.data.size() != static_cast<std::size_t>(output_size())) {
    throw std::invalid_argument("output gradient has the wrong length");
  }
  backward(Matrix(Eigen::Map<const Matrix>(output_grad.data.data(), 1, output_size())));
}

void Network::zero_grad() {
  for (auto& L : layers_) {
    L.weight_grad.setZero();
    L.bias_grad.setZero();
  }
}

void Network::sgd_step(const SgdConfig& cfg) {
  double step = cfg.learning_rate;
  if (cfg.max_grad_norm > 0) {
    double sq = 0.0;
    for (const auto& L : layers_) sq += L.weight_grad.squaredNorm() + L.bias_grad.squaredNorm();
    const double norm = std::sqrt(sq);
    if (norm > cfg.max_grad_norm) step *= cfg.max_grad_norm / norm;
  }
  for (auto& L : layers_) {
    L.weight.noalias() -= step * L.weight_grad;
    L.bias.noalias() -= step * L.bias_grad;
  }
  zero_grad();
}

void Network::resize_head(int new_out_dim, Rng& rng) {
  if (new_out_dim < 1) throw std::invalid_argument("head width must be >= 1");
  if (layers_.empty() || layers_.back().spec.kind != LayerKind::dense) {
    throw std::invalid_argument("network has no dense output layer");
  }
  Layer& L = layers_.back();
  const Eigen::Index old_rows = L.weight.rows();
  if (new_out_dim == old_rows) return;
  Matrix fresh(new_out_dim, L.weight.cols());
  init_uniform(fresh, static_cast<int>(L.weight.cols()), rng);
  Vector bias = Vector::Zero(new_out_dim);
  const Eigen::Index keep = std::min<Eigen::Index>(old_rows, new_out_dim);
  fresh.topRows(keep) = L.weight.topRows(keep);
  bias.head(keep) = L.bias.head(keep);
  L.weight = std::move(fresh);
  L.bias = std::move(bias);
  L.spec.units = new_out_dim;
  L.out_shape = {new_out_dim};
  L.weight_grad = Matrix::Zero(L.weight.rows(), L.weight.cols());
  L.bias_grad = Vector::Zero(new_out_dim);
  has_cache_ = false;
}

std::vector<ParamView> Network::parameters() {
  std::vector<ParamView> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Layer& L = layers_[i];
    if (L.weight.size() == 0) continue;
    std::string base = std::string(kind_name(L.spec.kind)) + std::to_string(i);
    out.push_back({base + ".weight", {L.weight.data(), static_cast<std::size_t>(L.weight.size())},
                   {L.weight_grad.data(), static_cast<std::size_t>(L.weight_grad.size())}});
    out.push_back({base + ".bias", {L.bias.data(), static_cast<std::size_t>(L.bias.size())},
                   {L.bias_grad.data(), static_cast<std::size_t>(L.bias_grad.size())}});
  }
  return out;
}

// Snapshot layout (text, one token group per line):
//   tinynet-snapshot 1
//   input <d0> <d1> ...
//   layers <count>
//   conv <filters> <kernel> <stride> | relu | flatten | dense <units>
//   ...
//   weights <rows> <cols>            (for each conv/dense layer, in order)
//   <row-major values, one row per line>
//   bias <n>
//   <values>
//   end
void Network::save(std::ostream& os) const {
  os << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
  os << "input";
  for (int d : input_shape_) os << ' ' << d;
  os << '\n' << "layers " << layers_.size() << '\n';
  for (const auto& L : layers_) {
    os << kind_name(L.spec.kind);
    if (L.spec.kind == LayerKind::conv) {
      os << ' ' << L.spec.filters << ' ' << L.spec.kernel << ' ' << L.spec.stride;
    } else if (L.spec.kind == LayerKind::dense) {
      os << ' ' << L.spec.units;
    }
    os << '\n';
  }
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& L : layers_) {
    if (L.weight.size() == 0) continue;
    os << "weights " << L.weight.rows() << ' ' << L.weight.cols() << '\n';
    for (Eigen::Index r = 0; r < L.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < L.weight.cols(); ++c) os << (c ? " " : "") << L.weight(r, c);
      os << '\n';
    }
    os << "bias " << L.bias.size() << '\n';
    for (Eigen::Index r = 0; r < L.bias.size(); ++r) os << (r ? " " : "") << L.bias[r];
    os << '\n';
  }
  os << "end\n";
}

Network Network::load(std::istream& is) {
  auto fail = [](const std::string& what) -> void {
    throw std::runtime_error("tinynet snapshot: " + what);
  };
  std::string word;
  int version = 0;
  if (!(is >> word >> version) || word != kSnapshotMagic) fail("missing header");
  if (version != kSnapshotVersion) fail("unsupported version " + std::to_string(version));

  Network net;
  std::string line;
  std::getline(is, line);
  if (!std::getline(is, line)) fail("missing input line");
  {
    std::istringstream ls(line);
    ls >> word;
    if (word != "input") fail("expected 'input'");
    int d;
    while (ls >> d) net.input_shape_.push_back(d);
  }
  std::size_t count = 0;
  if (!(is >> word >> count) || word != "layers") fail("expected 'layers'");
  net.layers_.resize(count);
  for (auto& L : net.layers_) {
    is >> word;
    if (word == "conv") {
      L.spec.kind = LayerKind::conv;
      is >> L.spec.filters >> L.spec.kernel >> L.spec.stride;
    } else if (word == "relu") {
      L.spec.kind = LayerKind::relu;
    } else if (word == "flatten") {
      L.spec.kind = LayerKind::flatten;
    } else if (word == "dense") {
      L.spec.kind = LayerKind::dense;
      is >> L.spec.units;
    } else {
      fail("unknown layer '" + word + "'");
    }
  }
  if (!is) fail("truncated layer list");
  net.build(nullptr);
  for (auto& L : net.layers_) {
    if (L.spec.kind != LayerKind::conv && L.spec.kind != LayerKind::dense) continue;
    Eigen::Index rows = 0, cols = 0, n = 0;
    if (!(is >> word >> rows >> cols) || word != "weights") fail("expected 'weights'");
    const Eigen::Index want_rows = L.out_shape[0];
    const Eigen::Index want_cols = L.spec.kind == LayerKind::dense
                                       ? L.in_shape[0]
                                       : static_cast<Eigen::Index>(L.in_shape[0]) * L.spec.kernel * L.spec.kernel;
    if (rows != want_rows || cols != want_cols) fail("weight shape mismatch");
    L.weight.resize(rows, cols);
    for (Eigen::Index i = 0; i < L.weight.size(); ++i) is >> L.weight.data()[i];
    if (!(is >> word >> n) || word != "bias" || n != rows) fail("expected 'bias'");
    L.bias.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) is >> L.bias[i];
    if (!is) fail("truncated parameters");
    L.weight_grad = Matrix::Zero(rows, cols);
    L.bias_grad = Vector::Zero(n);
  }
  if (!(is >> word) || word != "end") fail("missing 'end'");
  return net;
}

void Network::save_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  save(os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Network Network::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return load(is);
}

bool operator==(const Network& a, const Network& b) {
  if (a.input_shape_ != b.input_shape_ || a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    const auto& x = a.layers_[i];
    const auto& y = b.layers_[i];
    if (x.spec.kind != y.spec.kind || x.out_shape != y.out_shape) return false;
    if (x.weight.rows() != y.weight.rows() || x.weight.cols() != y.weight.cols()) return false;
    if (!(x.weight.array() == y.weight.array()).all()) return false;
    if (x.bias.size() != y.bias.size() || !(x.bias.array() == y.bias.array()).all()) return false;
  }
  return true;
}

}  // namespace ajam::tinynet
