#include "sbrl/tinynet.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sbrl/text.hpp"

namespace sbrl {

DenseLayer::DenseLayer(std::size_t in, std::size_t out)
    : in(in), out(out), weights(in * out, 0.0), biases(out, 0.0) {}

Mlp::Mlp(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output sizes");
  }
  for (auto s : sizes_) {
    if (s == 0) {
      throw std::invalid_argument("Mlp: layer sizes must be positive");
    }
  }
  for (std::size_t k = 0; k + 1 < sizes_.size(); ++k) {
    layers_.emplace_back(sizes_[k], sizes_[k + 1]);
  }
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += layer.weights.size() + layer.biases.size();
  }
  return n;
}

Mlp init_network(const std::vector<std::size_t>& layer_sizes, Rng& rng) {
  Mlp net(layer_sizes);
  for (auto& layer : net.layers()) {
    const double scale = std::sqrt(2.0 / static_cast<double>(layer.in));
    for (auto& w : layer.weights) {
      w = scale * rng.normal();
    }
  }
  return net;
}

ForwardCache forward(const Mlp& net, std::span<const double> input) {
  if (input.size() != net.input_dim()) {
    throw std::invalid_argument("forward: input has " + std::to_string(input.size()) +
                                " features, network expects " + std::to_string(net.input_dim()));
  }
  const auto& layers = net.layers();
  ForwardCache cache;
  cache.activations.reserve(layers.size() + 1);
  cache.pre_activations.reserve(layers.size());
  cache.activations.emplace_back(input.begin(), input.end());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& layer = layers[k];
    const auto& x = cache.activations.back();
    std::vector<double> z = layer.biases;
    for (std::size_t i = 0; i < layer.in; ++i) {
      const double xi = x[i];
      const double* row = layer.weights.data() + i * layer.out;
      for (std::size_t j = 0; j < layer.out; ++j) {
        z[j] += xi * row[j];
      }
    }
    std::vector<double> a = z;
    if (k + 1 < layers.size()) {
      for (auto& v : a) {
        v = v > 0.0 ? v : 0.0;
      }
    }
    cache.pre_activations.push_back(std::move(z));
    cache.activations.push_back(std::move(a));
  }
  return cache;
}

std::vector<double> predict(const Mlp& net, std::span<const double> input) {
  auto cache = forward(net, input);
  return std::move(cache.activations.back());
}

Gradients backward(const Mlp& net, const ForwardCache& cache, std::span<const double> output_grad) {
  const auto& layers = net.layers();
  if (cache.activations.size() != layers.size() + 1 ||
      cache.pre_activations.size() != layers.size()) {
    throw std::invalid_argument("backward: cache does not match network depth");
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    if (cache.activations[k].size() != layers[k].in ||
        cache.pre_activations[k].size() != layers[k].out) {
      throw std::invalid_argument("backward: cache shape does not match layer " +
                                  std::to_string(k));
    }
  }
  if (output_grad.size() != net.output_dim()) {
    throw std::invalid_argument("backward: output gradient has wrong size");
  }

  Gradients grads;
  grads.layers.resize(layers.size());
  // delta holds d(objective)/d(pre-activation) of the current layer.
  std::vector<double> delta(output_grad.begin(), output_grad.end());
  for (std::size_t k = layers.size(); k-- > 0;) {
    const auto& layer = layers[k];
    const auto& x = cache.activations[k];
    auto& g = grads.layers[k];
    g = DenseLayer(layer.in, layer.out);
    g.biases = delta;
    for (std::size_t i = 0; i < layer.in; ++i) {
      for (std::size_t j = 0; j < layer.out; ++j) {
        g.weights[i * layer.out + j] = x[i] * delta[j];
      }
    }
    if (k == 0) {
      break;
    }
    std::vector<double> upstream(layer.in, 0.0);
    const auto& z_prev = cache.pre_activations[k - 1];
    for (std::size_t i = 0; i < layer.in; ++i) {
      if (!(z_prev[i] > 0.0)) {
        continue;  // ReLU is flat here.
      }
      const double* row = layer.weights.data() + i * layer.out;
      double sum = 0.0;
      for (std::size_t j = 0; j < layer.out; ++j) {
        sum += row[j] * delta[j];
      }
      upstream[i] = sum;
    }
    delta = std::move(upstream);
  }
  return grads;
}

void sgd_step(Mlp& net, const Gradients& grads, double lr) {
  auto& layers = net.layers();
  if (grads.layers.size() != layers.size()) {
    throw std::invalid_argument("sgd_step: gradient depth does not match network");
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    auto& layer = layers[k];
    const auto& g = grads.layers[k];
    if (g.weights.size() != layer.weights.size() || g.biases.size() != layer.biases.size()) {
      throw std::invalid_argument("sgd_step: gradient shape mismatch at layer " +
                                  std::to_string(k));
    }
    for (std::size_t i = 0; i < layer.weights.size(); ++i) {
      layer.weights[i] -= lr * g.weights[i];
    }
    for (std::size_t j = 0; j < layer.biases.size(); ++j) {
      layer.biases[j] -= lr * g.biases[j];
    }
  }
}

std::string_view to_string(LossKind kind) { return kind == LossKind::L1 ? "l1" : "squared"; }

LossKind parse_loss_kind(std::string_view text) {
  if (text == "l1") return LossKind::L1;
  if (text == "squared") return LossKind::Squared;
  throw std::invalid_argument("unknown loss '" + std::string(text) + "'");
}

namespace {

void check_action(std::span<const double> q_values, std::size_t action) {
  if (action >= q_values.size()) {
    throw std::out_of_range("loss: action index " + std::to_string(action) + " out of range");
  }
}

}  // namespace

LossAndGrad l1_loss_and_grad(std::span<const double> q_values, double target, std::size_t action) {
  check_action(q_values, action);
  const double diff = target - q_values[action];
  LossAndGrad out{std::abs(diff), std::vector<double>(q_values.size(), 0.0)};
  out.output_grad[action] = diff > 0.0 ? -1.0 : (diff < 0.0 ? 1.0 : 0.0);
  return out;
}

LossAndGrad squared_loss_and_grad(std::span<const double> q_values, double target,
                                  std::size_t action) {
  check_action(q_values, action);
  const double diff = target - q_values[action];
  LossAndGrad out{0.5 * diff * diff, std::vector<double>(q_values.size(), 0.0)};
  out.output_grad[action] = -diff;
  return out;
}

LossAndGrad loss_and_grad(LossKind kind, std::span<const double> q_values, double target,
                          std::size_t action) {
  return kind == LossKind::L1 ? l1_loss_and_grad(q_values, target, action)
                              : squared_loss_and_grad(q_values, target, action);
}

namespace {

void write_row(std::ostream& out, const double* values, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    out << (j ? " " : "") << format_double(values[j]);
  }
  out << '\n';
}

std::vector<double> read_row(std::istream& in, std::size_t expected, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument(std::string("network file truncated while reading ") + what);
  }
  std::vector<double> row;
  std::istringstream tokens(line);
  std::string token;
  while (tokens >> token) {
    row.push_back(parse_double(token));
  }
  if (row.size() != expected) {
    throw std::invalid_argument(std::string("network file: bad ") + what + " row length");
  }
  return row;
}

}  // namespace

void write_network(std::ostream& out, const Mlp& net) {
  const auto& sizes = net.layer_sizes();
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    out << (k ? " " : "") << sizes[k];
  }
  out << '\n';
  for (const auto& layer : net.layers()) {
    for (std::size_t i = 0; i < layer.in; ++i) {
      write_row(out, layer.weights.data() + i * layer.out, layer.out);
    }
    write_row(out, layer.biases.data(), layer.out);
  }
}

Mlp read_network(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("network file: missing header");
  }
  std::vector<std::size_t> sizes;
  std::istringstream tokens(header);
  std::string token;
  while (tokens >> token) {
    const auto n = parse_integer(token);
    if (n <= 0) {
      throw std::invalid_argument("network file: layer sizes must be positive");
    }
    sizes.push_back(static_cast<std::size_t>(n));
  }
  Mlp net(sizes);
  for (auto& layer : net.layers()) {
    for (std::size_t i = 0; i < layer.in; ++i) {
      const auto row = read_row(in, layer.out, "weight");
      std::copy(row.begin(), row.end(), layer.weights.begin() + static_cast<long>(i * layer.out));
    }
    layer.biases = read_row(in, layer.out, "bias");
  }
  return net;
}

}  // namespace sbrl
