#include "sbrl/dqn_agent.hpp"

#include <stdexcept>
#include <string>

namespace sbrl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  }
}

void ReplayBuffer::push(Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
    return;
  }
  storage_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= storage_.size()) {
    throw std::out_of_range("ReplayBuffer: index " + std::to_string(i) + " out of range");
  }
  return storage_[(head_ + i) % storage_.size()];
}

std::vector<Transition> ReplayBuffer::sample_minibatch(std::size_t batch_size, Rng& rng) const {
  if (storage_.empty()) {
    throw std::logic_error("ReplayBuffer: cannot sample from an empty buffer");
  }
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    batch.push_back(storage_[rng.uniform_index(storage_.size())]);
  }
  return batch;
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

double compute_target(const Transition& t, const Mlp& net, double gamma) {
  if (t.terminal) {
    return t.reward;
  }
  const auto q_next = predict(net, t.next_obs);
  return t.reward + gamma * q_next[argmax(q_next)];
}

TrainStats train_on_minibatch(Mlp& net, std::span<const Transition> batch, double gamma, double lr,
                              LossKind loss) {
  if (batch.empty()) {
    throw std::invalid_argument("train_on_minibatch: empty batch");
  }
  double total = 0.0;
  for (const auto& t : batch) {
    const double target = compute_target(t, net, gamma);
    const auto cache = forward(net, t.obs);
    const auto lg = loss_and_grad(loss, cache.output(), target, t.action);
    sgd_step(net, backward(net, cache, lg.output_grad), lr);
    total += lg.loss;
  }
  return {total / static_cast<double>(batch.size())};
}

std::size_t select_action(const QFunction& q, std::size_t action_count,
                          std::span<const double> obs, double epsilon, Rng& rng) {
  if (rng.uniform01() < epsilon) {
    return rng.uniform_index(action_count);
  }
  return argmax(q(obs));
}

std::size_t select_action(const Mlp& net, std::span<const double> obs, double epsilon, Rng& rng) {
  return select_action([&net](std::span<const double> x) { return predict(net, x); },
                       net.output_dim(), obs, epsilon, rng);
}

}  // namespace sbrl
