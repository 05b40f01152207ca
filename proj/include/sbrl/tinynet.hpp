#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "sbrl/rng.hpp"

namespace sbrl {

/// Fully connected layer. `weights` is row-major with shape in x out, so the
/// weight from input i to output j lives at weights[i * out + j].
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  DenseLayer() = default;
  DenseLayer(std::size_t in, std::size_t out);

  double& weight(std::size_t i, std::size_t j) { return weights[i * out + j]; }
  double weight(std::size_t i, std::size_t j) const { return weights[i * out + j]; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Dense network with ReLU hidden layers and a linear output layer.
class Mlp {
 public:
  Mlp() = default;
  /// Zero-initialized network. Throws std::invalid_argument for fewer than two
  /// sizes or a zero size.
  explicit Mlp(std::vector<std::size_t> layer_sizes);

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  std::size_t input_dim() const { return sizes_.front(); }
  std::size_t output_dim() const { return sizes_.back(); }
  std::size_t parameter_count() const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  friend bool operator==(const Mlp&, const Mlp&) = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<DenseLayer> layers_;
};

/// Values kept by forward() for backward(). `activations[0]` is the input;
/// `pre_activations[k]` and `activations[k + 1]` belong to layer k.
struct ForwardCache {
  std::vector<std::vector<double>> pre_activations;
  std::vector<std::vector<double>> activations;

  std::span<const double> output() const { return activations.back(); }
};

/// Same shapes as the Mlp the gradients were taken from.
struct Gradients {
  std::vector<DenseLayer> layers;
};

/// Weights ~ N(0, 2 / fan_in), biases zero. Layers are filled in order,
/// weights row-major.
Mlp init_network(const std::vector<std::size_t>& layer_sizes, Rng& rng);

/// Throws std::invalid_argument when input.size() != net.input_dim().
ForwardCache forward(const Mlp& net, std::span<const double> input);
std::vector<double> predict(const Mlp& net, std::span<const double> input);

/// Reverse-mode gradients of <output_grad, output> with respect to every
/// parameter.
Gradients backward(const Mlp& net, const ForwardCache& cache, std::span<const double> output_grad);

/// p <- p - lr * grad(p) for every parameter.
void sgd_step(Mlp& net, const Gradients& grads, double lr);

enum class LossKind {
  /// |target - q[a]|
  L1,
  /// (target - q[a])^2 / 2
  Squared,
};

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view text);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> output_grad;
};

/// Absolute error on the chosen action; the gradient is -sign(target - q[a])
/// at `action` and zero elsewhere, with sign(0) = 0.
LossAndGrad l1_loss_and_grad(std::span<const double> q_values, double target, std::size_t action);
LossAndGrad squared_loss_and_grad(std::span<const double> q_values, double target,
                                  std::size_t action);
LossAndGrad loss_and_grad(LossKind kind, std::span<const double> q_values, double target,
                          std::size_t action);

/// Text format: a line of layer sizes, then per layer `in` lines of `out`
/// weights and one line of biases. Values use shortest round-trip decimals.
void write_network(std::ostream& out, const Mlp& net);
Mlp read_network(std::istream& in);

}  // namespace sbrl
