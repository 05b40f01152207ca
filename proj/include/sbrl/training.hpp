#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "sbrl/config.hpp"
#include "sbrl/dqn_agent.hpp"
#include "sbrl/rng.hpp"
#include "sbrl/tabular_q.hpp"
#include "sbrl/tinynet.hpp"

namespace sbrl {

struct EpisodeRecord {
  long episode = 0;
  /// steps + pen when the fall was penalized.
  double reward = 0.0;
  long steps = 0;
  double epsilon = 0.0;
  std::optional<double> mean_loss;
  /// The robot fell after the accumulated reward had exceeded the target.
  bool passed = false;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

using EpisodeLog = std::vector<EpisodeRecord>;

struct EpisodeLimits {
  long iterations = 2000;
  double pen = -100.0;
  double target = 2000.0;
};

template <class Obs>
struct EnvStep {
  Obs obs;
  bool fallen = false;
};

struct EpisodeOutcome {
  double reward = 0.0;
  long steps = 0;
  bool passed = false;
};

/// One episode of the balancing loop shared by every controller:
///   act, step; on a fall apply the penalty (and learn from it) only while
///   the accumulated reward is at most the target, otherwise mark the episode
///   passed; on survival collect +1 and learn. No step is issued after a fall.
///
/// `env.reset()` returns the first observation, `env.step(action)` an
/// EnvStep; `agent.act(obs)` picks an action and
/// `agent.learn(obs, action, reward, next_obs, terminal)` consumes the
/// transition.
template <class Env, class Agent>
EpisodeOutcome run_episode(Env& env, Agent& agent, const EpisodeLimits& limits) {
  auto obs = env.reset();
  EpisodeOutcome out;
  for (long it = 0; it < limits.iterations; ++it) {
    const auto action = agent.act(obs);
    auto next = env.step(action);
    if (next.fallen) {
      if (out.reward <= limits.target) {
        out.reward += limits.pen;
        agent.learn(obs, action, limits.pen, next.obs, true);
      } else {
        out.passed = true;
      }
      break;
    }
    out.reward += 1.0;
    ++out.steps;
    agent.learn(obs, action, 1.0, next.obs, false);
    obs = std::move(next.obs);
  }
  return out;
}

/// Episodic environment over discrete states and actions.
template <class E>
concept DiscreteEnv = requires(E env, std::size_t action) {
  { env.reset() } -> std::convertible_to<std::size_t>;
  { env.step(action) } -> std::same_as<EnvStep<std::size_t>>;
};

struct QLearningSettings {
  UpdateRule rule;
  EpsilonSchedule epsilon;
  long episodes = 1500;
  EpisodeLimits limits;
};

/// Tabular Q-learning with epsilon-greedy exploration over any discrete
/// environment. `table` is updated in place.
template <DiscreteEnv Env>
EpisodeLog q_learning_loop(Env& env, QTable& table, const QLearningSettings& settings,
                           Rng& explore) {
  struct Agent {
    QTable& table;
    const UpdateRule& rule;
    Rng& rng;
    double epsilon;
    std::size_t act(std::size_t s) { return epsilon_greedy(table, s, epsilon, rng); }
    void learn(std::size_t s, std::size_t a, double r, std::size_t s_next, bool terminal) {
      q_update(table, s, a, r, s_next, terminal, rule);
    }
  };
  EpisodeLog log;
  log.reserve(static_cast<std::size_t>(settings.episodes));
  double epsilon = settings.epsilon.start;
  for (long e = 0; e < settings.episodes; ++e) {
    Agent agent{table, settings.rule, explore, epsilon};
    const auto out = run_episode(env, agent, settings.limits);
    log.push_back({e, out.reward, out.steps, epsilon, std::nullopt, out.passed});
    epsilon = settings.epsilon.next(epsilon);
  }
  return log;
}

/// Simulated robot with reset/step semantics and a seeded reset stream.
class PendulumTask {
 public:
  PendulumTask(const PhysicsParams& params, double limit_deg, Rng rng);

  const SimState& reset();
  StepResult step(double command);
  const SimState& state() const { return state_; }
  const PhysicsParams& params() const { return params_; }

 private:
  PhysicsParams params_;
  double limit_deg_;
  Rng rng_;
  SimState state_;
};

/// PendulumTask seen through the pitch bins and the action table.
class BinnedPendulumEnv {
 public:
  BinnedPendulumEnv(const TrainConfig& config, Rng rng);

  std::size_t reset();
  EnvStep<std::size_t> step(std::size_t action);

 private:
  PendulumTask task_;
  StateBins bins_;
  ActionTable actions_;
};

struct QLearningRun {
  EpisodeLog log;
  QTable table;
};

struct DqnRun {
  EpisodeLog log;
  Mlp net;
};

struct TrainingRun {
  EpisodeLog log;
  std::optional<QTable> table;
  std::optional<Mlp> net;
};

/// Each runner validates the config (std::invalid_argument / ConfigError)
/// before the first episode.
QLearningRun run_q_learning(const TrainConfig& config);
DqnRun run_dqn(const TrainConfig& config);
EpisodeLog run_pid_baseline(const TrainConfig& config);
TrainingRun run_training(const TrainConfig& config);

}  // namespace sbrl
