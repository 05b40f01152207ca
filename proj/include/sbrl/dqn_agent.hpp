#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sbrl/rng.hpp"
#include "sbrl/tinynet.hpp"

namespace sbrl {

struct Transition {
  std::vector<double> obs;
  std::size_t action = 0;
  double reward = 0.0;
  std::vector<double> next_obs;
  /// Set when the step ended the episode with the penalty.
  bool terminal = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Fixed-capacity ring of transitions; a push into a full buffer evicts the
/// oldest entry.
class ReplayBuffer {
 public:
  /// Throws std::invalid_argument for capacity 0.
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return storage_.empty(); }

  /// i-th oldest entry currently stored.
  const Transition& at(std::size_t i) const;

  /// `batch_size` uniform draws with replacement. Throws std::logic_error on
  /// an empty buffer.
  std::vector<Transition> sample_minibatch(std::size_t batch_size, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // oldest entry once full
  std::vector<Transition> storage_;
};

/// Penalized terminal transitions target the reward alone; otherwise
/// reward + gamma * max_a Q(next_obs, a). Reads only reward, terminal and
/// next_obs.
double compute_target(const Transition& t, const Mlp& net, double gamma);

struct TrainStats {
  double mean_loss = 0.0;
};

/// Sequential per-transition SGD in batch order: target from the current
/// net, forward on obs, loss on the taken action, backward, step.
TrainStats train_on_minibatch(Mlp& net, std::span<const Transition> batch, double gamma, double lr,
                              LossKind loss = LossKind::L1);

using QFunction = std::function<std::vector<double>(std::span<const double>)>;

/// Epsilon-greedy over a Q function evaluated once per greedy decision;
/// greedy ties go to the lowest index. Uses the same draw order as
/// epsilon_greedy on a QTable.
std::size_t select_action(const QFunction& q, std::size_t action_count,
                          std::span<const double> obs, double epsilon, Rng& rng);
std::size_t select_action(const Mlp& net, std::span<const double> obs, double epsilon, Rng& rng);

std::size_t argmax(std::span<const double> values);

}  // namespace sbrl
