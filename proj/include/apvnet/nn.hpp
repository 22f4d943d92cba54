#pragma once

// Dense ReLU network with a single sigmoid output, trained on mean binary
// cross-entropy. Everything runs in double precision and every reduction is
// summed in index order, so a run is a deterministic function of its inputs
// and seeds.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "apvnet/dataset.hpp"
#include "apvnet/error.hpp"
#include "apvnet/features.hpp"
#include "apvnet/rng.hpp"

namespace apvnet {

inline const std::vector<std::size_t> kDefaultLayerDims{26, 128, 128, 128, 1};

// Bounds applied to probabilities before taking logs. Numerics guard only;
// labels are never smoothed.
inline constexpr double kProbabilityClamp = 1e-7;

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> biases;   // out

  DenseLayer() = default;
  DenseLayer(std::size_t in_dim, std::size_t out_dim)
      : in(in_dim), out(out_dim), weights(in_dim * out_dim, 0.0), biases(out_dim, 0.0) {}

  double& w(std::size_t o, std::size_t i) { return weights[o * in + i]; }
  double w(std::size_t o, std::size_t i) const { return weights[o * in + i]; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

struct MlpModel {
  std::vector<std::size_t> layer_dims;
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const { return layer_dims.front(); }
  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.biases.size();
    return n;
  }

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

struct Gradients {
  std::vector<DenseLayer> layers;
};

inline std::span<const double> row_span(std::span<const double> v) { return v; }
inline std::span<const double> row_span(const std::vector<double>& v) { return v; }

namespace detail {

inline void check_dims(std::span<const std::size_t> dims) {
  if (dims.size() < 2) throw Error(ErrorCode::BadArchitecture, "need at least an input and an output layer");
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::BadArchitecture, "layer widths must be positive");
  }
}

inline std::vector<DenseLayer> zero_like(const std::vector<DenseLayer>& layers) {
  std::vector<DenseLayer> out;
  out.reserve(layers.size());
  for (const auto& l : layers) out.emplace_back(l.in, l.out);
  return out;
}

}  // namespace detail

inline MlpModel zero_model(std::span<const std::size_t> dims) {
  detail::check_dims(dims);
  MlpModel m;
  m.layer_dims.assign(dims.begin(), dims.end());
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) m.layers.emplace_back(dims[l], dims[l + 1]);
  return m;
}

// Glorot-uniform weights, bounds +-sqrt(6 / (fan_in + fan_out)), drawn
// layer by layer in row-major order. Biases start at zero.
inline MlpModel init_model(std::uint64_t seed, std::span<const std::size_t> dims = kDefaultLayerDims) {
  MlpModel m = zero_model(dims);
  SplitMix64 rng(seed);
  for (auto& layer : m.layers) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    for (double& w : layer.weights) w = rng.uniform(-limit, limit);
  }
  return m;
}

inline double sigmoid(double z) noexcept {
  double s;
  if (z >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    s = e / (1.0 + e);
  }
  // Keep the output strictly inside (0, 1) even when exp saturates.
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  constexpr double hi = 1.0 - 0x1.0p-53;
  return std::clamp(s, lo, hi);
}

inline double bce_term(double p, double y) noexcept {
  const double q = std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
  return -(y * std::log(q) + (1.0 - y) * std::log(1.0 - q));
}

// Scratch buffers for one forward/backward pass through a model.
class Workspace {
 public:
  explicit Workspace(const MlpModel& m) {
    acts_.reserve(m.layer_dims.size());
    for (std::size_t d : m.layer_dims) acts_.emplace_back(d, 0.0);
    std::size_t widest = 0;
    for (std::size_t d : m.layer_dims) widest = std::max(widest, d);
    delta_.assign(widest, 0.0);
    delta_prev_.assign(widest, 0.0);
  }

  // Returns the output probability; post-activation values stay cached for
  // accumulate().
  double forward(const MlpModel& m, std::span<const double> x) {
    if (x.size() != m.input_dim()) {
      throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(x.size()) +
                                                    " components, model expects " +
                                                    std::to_string(m.input_dim()));
    }
    std::copy(x.begin(), x.end(), acts_[0].begin());
    const std::size_t last = m.layers.size() - 1;
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
      const DenseLayer& layer = m.layers[l];
      const std::vector<double>& a = acts_[l];
      std::vector<double>& z = acts_[l + 1];
      std::copy(layer.biases.begin(), layer.biases.end(), z.begin());
      // z[o] accumulates over i in index order.
      for (std::size_t i = 0; i < layer.in; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (std::size_t o = 0; o < layer.out; ++o) z[o] += layer.weights[o * layer.in + i] * ai;
      }
      if (l == last) {
        for (double& v : z) v = sigmoid(v);
      } else {
        for (double& v : z) v = v > 0.0 ? v : 0.0;
      }
    }
    return acts_.back()[0];
  }

  // Adds the gradient of the per-sample loss for the last forward() call.
  // The output error p - y is the derivative of cross-entropy composed with
  // the sigmoid, taken with respect to the output pre-activation.
  void accumulate(const MlpModel& m, double label, Gradients& g) {
    const std::size_t out_dim = m.layers.back().out;
    for (std::size_t o = 0; o < out_dim; ++o) delta_[o] = acts_.back()[o] - label;
    for (std::size_t l = m.layers.size(); l-- > 0;) {
      const DenseLayer& layer = m.layers[l];
      DenseLayer& gl = g.layers[l];
      const std::vector<double>& a = acts_[l];
      for (std::size_t o = 0; o < layer.out; ++o) {
        const double d = delta_[o];
        gl.biases[o] += d;
        double* row = gl.weights.data() + o * layer.in;
        for (std::size_t i = 0; i < layer.in; ++i) row[i] += d * a[i];
      }
      if (l == 0) break;
      std::fill(delta_prev_.begin(), delta_prev_.begin() + static_cast<std::ptrdiff_t>(layer.in), 0.0);
      for (std::size_t o = 0; o < layer.out; ++o) {
        const double d = delta_[o];
        const double* row = layer.weights.data() + o * layer.in;
        for (std::size_t i = 0; i < layer.in; ++i) delta_prev_[i] += row[i] * d;
      }
      for (std::size_t i = 0; i < layer.in; ++i) {
        delta_[i] = a[i] > 0.0 ? delta_prev_[i] : 0.0;
      }
    }
  }

 private:
  std::vector<std::vector<double>> acts_;
  std::vector<double> delta_;
  std::vector<double> delta_prev_;
};

inline double forward_one(const MlpModel& model, std::span<const double> x) {
  Workspace ws(model);
  return ws.forward(model, x);
}

template <class Rows>
std::vector<double> forward(const MlpModel& model, const Rows& rows) {
  Workspace ws(model);
  std::vector<double> out;
  out.reserve(std::size(rows));
  for (const auto& row : rows) out.push_back(ws.forward(model, row_span(row)));
  return out;
}

inline double loss_bce(std::span<const double> predictions, std::span<const double> labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                               std::to_string(labels.size()) + " labels");
  }
  if (predictions.empty()) throw Error(ErrorCode::EmptyInput, "no predictions");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) sum += bce_term(predictions[i], labels[i]);
  return sum / static_cast<double>(predictions.size());
}

inline std::vector<double> to_real_labels(std::span<const int> labels) {
  return {labels.begin(), labels.end()};
}

inline Gradients zero_gradients(const MlpModel& model) { return {detail::zero_like(model.layers)}; }

inline void scale(Gradients& g, double factor) {
  for (auto& l : g.layers) {
    for (double& w : l.weights) w *= factor;
    for (double& b : l.biases) b *= factor;
  }
}

// Gradient of the mean cross-entropy over the batch. Per-sample gradients
// are summed in row order and divided by the batch size.
template <class Rows>
Gradients backward(const MlpModel& model, const Rows& rows, std::span<const double> labels) {
  if (std::size(rows) != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "rows and labels differ in length");
  }
  if (labels.empty()) throw Error(ErrorCode::EmptyInput, "empty batch");
  Workspace ws(model);
  Gradients g = zero_gradients(model);
  std::size_t i = 0;
  for (const auto& row : rows) {
    ws.forward(model, row_span(row));
    ws.accumulate(model, labels[i++], g);
  }
  scale(g, 1.0 / static_cast<double>(labels.size()));
  return g;
}

namespace detail {

// Extended-precision forward pass used only by the finite-difference check,
// so the reference loss does not share arithmetic with Workspace.
inline long double reference_loss(const MlpModel& m, const std::vector<std::vector<double>>& rows,
                                  std::span<const double> labels, std::size_t layer_idx,
                                  std::size_t param_idx, long double delta) {
  long double total = 0.0L;
  std::vector<long double> a;
  std::vector<long double> z;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.assign(rows[r].begin(), rows[r].end());
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
      const DenseLayer& layer = m.layers[l];
      z.assign(layer.out, 0.0L);
      for (std::size_t o = 0; o < layer.out; ++o) {
        long double b = layer.biases[o];
        if (l == layer_idx && param_idx == layer.weights.size() + o) b += delta;
        long double s = b;
        for (std::size_t i = 0; i < layer.in; ++i) {
          long double w = layer.weights[o * layer.in + i];
          if (l == layer_idx && param_idx == o * layer.in + i) w += delta;
          s += w * a[i];
        }
        z[o] = s;
      }
      if (l + 1 == m.layers.size()) {
        for (auto& v : z) v = 1.0L / (1.0L + std::exp(-v));
      } else {
        for (auto& v : z) v = v > 0.0L ? v : 0.0L;
      }
      a.swap(z);
    }
    const long double lo = kProbabilityClamp;
    const long double p = std::clamp(a[0], lo, 1.0L - lo);
    const long double y = labels[r];
    total += -(y * std::log(p) + (1.0L - y) * std::log(1.0L - p));
  }
  return total / static_cast<long double>(rows.size());
}

}  // namespace detail

// Compares backward() against central differences of the loss for every
// parameter. Returns max |a - b| / max(|a|, |b|, 1e-12).
template <class Rows>
double grad_check(const MlpModel& model, const Rows& rows, std::span<const double> labels, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::DegenerateStep, "step must be positive");
  const Gradients analytic = backward(model, rows, labels);
  std::vector<std::vector<double>> copy;
  for (const auto& row : rows) {
    const auto s = row_span(row);
    copy.emplace_back(s.begin(), s.end());
  }
  double worst = 0.0;
  const long double h = step;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer& g = analytic.layers[l];
    const std::size_t n = g.weights.size() + g.biases.size();
    for (std::size_t p = 0; p < n; ++p) {
      const long double up = detail::reference_loss(model, copy, labels, l, p, h);
      const long double down = detail::reference_loss(model, copy, labels, l, p, -h);
      const double numeric = static_cast<double>((up - down) / (2.0L * h));
      const double exact = p < g.weights.size() ? g.weights[p] : g.biases[p - g.weights.size()];
      const double denom = std::max({std::abs(numeric), std::abs(exact), 1e-12});
      worst = std::max(worst, std::abs(numeric - exact) / denom);
    }
  }
  return worst;
}

enum class OptimizerKind { adam, sgd };

inline std::string_view to_string(OptimizerKind k) { return k == OptimizerKind::adam ? "adam" : "sgd"; }

struct TrainConfig {
  std::size_t epochs = 600;
  std::size_t batch_size = 200;
  double learning_rate = 0.001;
  OptimizerKind optimizer = OptimizerKind::adam;
  std::uint64_t seed = 0;  // per-epoch shuffle stream
  bool shuffle_each_epoch = true;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerState {
  std::vector<DenseLayer> first_moment;
  std::vector<DenseLayer> second_moment;
  std::uint64_t step = 0;
};

inline OptimizerState make_optimizer_state(const MlpModel& model, OptimizerKind kind) {
  OptimizerState s;
  if (kind == OptimizerKind::adam) {
    s.first_moment = detail::zero_like(model.layers);
    s.second_moment = detail::zero_like(model.layers);
  }
  return s;
}

inline void optimizer_step(MlpModel& model, const Gradients& grads, OptimizerState& state,
                           const TrainConfig& config) {
  auto same_shape = [](const std::vector<DenseLayer>& a, const std::vector<DenseLayer>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t l = 0; l < a.size(); ++l) {
      if (a[l].in != b[l].in || a[l].out != b[l].out || a[l].weights.size() != b[l].weights.size() ||
          a[l].biases.size() != b[l].biases.size()) {
        return false;
      }
    }
    return true;
  };
  if (!same_shape(model.layers, grads.layers)) throw Error(ErrorCode::ShapeMismatch, "gradient shape");
  ++state.step;
  const double lr = config.learning_rate;

  if (config.optimizer == OptimizerKind::sgd) {
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      auto& p = model.layers[l];
      const auto& g = grads.layers[l];
      for (std::size_t i = 0; i < p.weights.size(); ++i) p.weights[i] -= lr * g.weights[i];
      for (std::size_t i = 0; i < p.biases.size(); ++i) p.biases[i] -= lr * g.biases[i];
    }
    return;
  }

  if (!same_shape(model.layers, state.first_moment) || !same_shape(model.layers, state.second_moment)) {
    throw Error(ErrorCode::ShapeMismatch, "optimizer state shape");
  }
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(b1, t);
  const double c2 = 1.0 - std::pow(b2, t);
  auto update = [&](std::vector<double>& theta, const std::vector<double>& g, std::vector<double>& m,
                    std::vector<double>& v) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      theta[i] -= lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
  };
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    update(model.layers[l].weights, grads.layers[l].weights, state.first_moment[l].weights,
           state.second_moment[l].weights);
    update(model.layers[l].biases, grads.layers[l].biases, state.first_moment[l].biases,
           state.second_moment[l].biases);
  }
}

struct TrainHistory {
  std::vector<double> epoch_loss;
  std::vector<double> epoch_seconds;
};

struct TrainResult {
  MlpModel model;
  TrainHistory history;
};

using EpochCallback = std::function<void(std::size_t epoch, double mean_loss)>;

// Mini-batch training. Each epoch reshuffles the row order (if enabled) with
// the config seed stream; the last batch of an epoch may be short. The epoch
// loss is the mean per-sample loss observed during the epoch's forward
// passes, before each batch's update.
inline TrainResult train(const DesignMatrix& matrix, const TrainConfig& config, std::uint64_t init_seed,
                         std::span<const std::size_t> layer_dims = kDefaultLayerDims,
                         const EpochCallback& on_epoch = {}) {
  if (matrix.rows() == 0) throw Error(ErrorCode::EmptyTrainingSet, "no training rows");
  if (matrix.labels.size() != matrix.rows()) throw Error(ErrorCode::LengthMismatch, "labels vs rows");
  if (config.epochs == 0 || config.batch_size == 0) {
    throw Error(ErrorCode::BadConfig, "epochs and batch size must be positive");
  }
  if (config.batch_size > matrix.rows()) {
    throw Error(ErrorCode::BadConfig, "batch size " + std::to_string(config.batch_size) +
                                          " exceeds training set size " + std::to_string(matrix.rows()));
  }
  if (!(config.learning_rate > 0.0)) throw Error(ErrorCode::BadConfig, "learning rate must be positive");

  TrainResult result{init_model(init_seed, layer_dims), {}};
  MlpModel& model = result.model;
  OptimizerState state = make_optimizer_state(model, config.optimizer);
  Workspace ws(model);
  Gradients grads = zero_gradients(model);
  SplitMix64 rng(config.seed);

  const std::size_t n = matrix.rows();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    if (config.shuffle_each_epoch) fisher_yates_shuffle(std::span<std::size_t>(order), rng);
    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
      const std::size_t end = std::min(n, begin + config.batch_size);
      for (auto& l : grads.layers) {
        std::fill(l.weights.begin(), l.weights.end(), 0.0);
        std::fill(l.biases.begin(), l.biases.end(), 0.0);
      }
      for (std::size_t k = begin; k < end; ++k) {
        const std::size_t row = order[k];
        const double y = matrix.labels[row];
        const double p = ws.forward(model, row_span(matrix.features[row]));
        loss_sum += bce_term(p, y);
        ws.accumulate(model, y, grads);
      }
      scale(grads, 1.0 / static_cast<double>(end - begin));
      optimizer_step(model, grads, state, config);
    }
    const double mean_loss = loss_sum / static_cast<double>(n);
    result.history.epoch_loss.push_back(mean_loss);
    result.history.epoch_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
    if (on_epoch) on_epoch(epoch + 1, mean_loss);
  }
  return result;
}

// Label 1 when the output probability reaches the threshold.
inline int predict(const MlpModel& model, std::span<const double> feature, double threshold = 0.5) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error(ErrorCode::BadThreshold, "threshold outside [0, 1]");
  return forward_one(model, feature) >= threshold ? 1 : 0;
}

inline int predict(const MlpModel& model, const FeatureVector& feature, double threshold = 0.5) {
  return predict(model, row_span(feature), threshold);
}

template <class Rows>
std::vector<int> predict_all(const MlpModel& model, const Rows& rows, double threshold = 0.5) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error(ErrorCode::BadThreshold, "threshold outside [0, 1]");
  std::vector<int> out;
  for (double p : forward(model, rows)) out.push_back(p >= threshold ? 1 : 0);
  return out;
}

// Model file, all integers and floats little-endian:
//   bytes 0..5   magic "APVNET"
//   u32          format version (1)
//   u32          number of layer dims D
//   D x u32      layer dims
//   per layer    weights (out x in, row-major) then biases, as f64
// No trailing bytes.
inline constexpr std::string_view kModelMagic = "APVNET";
inline constexpr std::uint32_t kModelFormatVersion = 1;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<char>((v >> s) & 0xFF));
}

inline void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int s = 0; s < 64; s += 8) out.push_back(static_cast<char>((v >> s) & 0xFF));
}

class ByteCursor {
 public:
  explicit ByteCursor(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t take(int width) {
    if (bytes_.size() - pos_ < static_cast<std::size_t>(width)) {
      throw Error(ErrorCode::MalformedModelFile, "truncated model file");
    }
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + static_cast<std::size_t>(b)]))
           << (8 * b);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(take(4)); }
  double f64() { return std::bit_cast<double>(take(8)); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_model(const MlpModel& model) {
  std::string out(kModelMagic);
  detail::put_u32(out, kModelFormatVersion);
  detail::put_u32(out, static_cast<std::uint32_t>(model.layer_dims.size()));
  for (std::size_t d : model.layer_dims) detail::put_u32(out, static_cast<std::uint32_t>(d));
  for (const auto& l : model.layers) {
    for (double w : l.weights) {
      if (!std::isfinite(w)) throw Error(ErrorCode::BadConfig, "cannot save non-finite parameters");
      detail::put_f64(out, w);
    }
    for (double b : l.biases) {
      if (!std::isfinite(b)) throw Error(ErrorCode::BadConfig, "cannot save non-finite parameters");
      detail::put_f64(out, b);
    }
  }
  return out;
}

inline MlpModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < kModelMagic.size() || bytes.substr(0, kModelMagic.size()) != kModelMagic) {
    throw Error(ErrorCode::MalformedModelFile, "missing APVNET magic");
  }
  detail::ByteCursor cur(bytes.substr(kModelMagic.size()));
  const std::uint32_t version = cur.u32();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "model format version " + std::to_string(version));
  }
  const std::uint32_t ndims = cur.u32();
  if (ndims < 2 || ndims > 64) throw Error(ErrorCode::MalformedModelFile, "bad layer count");
  std::vector<std::size_t> dims;
  std::uint64_t params = 0;
  for (std::uint32_t i = 0; i < ndims; ++i) {
    const std::uint32_t d = cur.u32();
    if (d == 0) throw Error(ErrorCode::MalformedModelFile, "zero layer width");
    if (!dims.empty()) params += static_cast<std::uint64_t>(dims.back()) * d + d;
    dims.push_back(d);
  }
  if (params * 8 != cur.remaining()) {
    throw Error(ErrorCode::MalformedModelFile, "parameter payload size does not match layer dims");
  }
  MlpModel m = zero_model(dims);
  for (auto& l : m.layers) {
    for (double& w : l.weights) w = cur.f64();
    for (double& b : l.biases) b = cur.f64();
  }
  return m;
}

inline void save_model(const MlpModel& model, std::ostream& out) {
  const std::string bytes = serialize_model(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing model");
}

inline MlpModel load_model(std::istream& in) {
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize_model(bytes);
}

}  // namespace apvnet
