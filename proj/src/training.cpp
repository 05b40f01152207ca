#include "sbrl/training.hpp"

#include <stdexcept>
#include <string>

namespace sbrl {
namespace {

void require_algo(const TrainConfig& config, Algo expected) {
  if (config.algo != expected) {
    throw ConfigError("config algo is '" + std::string(to_string(config.algo)) + "', expected '" +
                      std::string(to_string(expected)) + "'");
  }
  config.validate();
}

EpisodeLimits limits_of(const TrainConfig& config) {
  return {config.iterations, config.pen, config.target};
}

class ObservedPendulumEnv {
 public:
  ObservedPendulumEnv(const TrainConfig& config, Rng rng)
      : task_(config.physics, config.limit_deg, std::move(rng)),
        mode_(config.obs_mode),
        actions_(config.actions) {}

  std::vector<double> reset() { return make_obs(task_.reset(), mode_); }

  EnvStep<std::vector<double>> step(std::size_t action) {
    const auto r = task_.step(actions_.value(action));
    return {make_obs(r.state, mode_), r.terminated};
  }

 private:
  PendulumTask task_;
  ObsMode mode_;
  ActionTable actions_;
};

struct DqnActor {
  const Mlp& net;
  ReplayBuffer& buffer;
  Rng& rng;
  double epsilon;

  std::size_t act(const std::vector<double>& obs) { return select_action(net, obs, epsilon, rng); }
  void learn(const std::vector<double>& obs, std::size_t a, double r,
             const std::vector<double>& next, bool terminal) {
    buffer.push({obs, a, r, next, terminal});
  }
};

class PidEnv {
 public:
  explicit PidEnv(PendulumTask& task) : task_(task) {}
  SimState reset() { return task_.reset(); }
  EnvStep<SimState> step(double command) {
    const auto r = task_.step(command);
    return {r.state, r.terminated};
  }

 private:
  PendulumTask& task_;
};

struct PidAgent {
  PidGains gains;
  double control_period;
  PidMemory memory;

  double act(const SimState& s) {
    const auto out = pid_action(s, gains, memory, control_period);
    memory = out.memory;
    return out.command;
  }
  void learn(const SimState&, double, double, const SimState&, bool) {}
};

}  // namespace

PendulumTask::PendulumTask(const PhysicsParams& params, double limit_deg, Rng rng)
    : params_(params), limit_deg_(limit_deg), rng_(std::move(rng)) {
  params_.validate();
  if (!(limit_deg > 0.0)) {
    throw std::invalid_argument("PendulumTask: limit must be positive");
  }
}

const SimState& PendulumTask::reset() {
  state_ = sbrl::reset(params_, rng_);
  return state_;
}

StepResult PendulumTask::step(double command) {
  auto r = sbrl::step(state_, command, params_, limit_deg_);
  state_ = r.state;
  return r;
}

BinnedPendulumEnv::BinnedPendulumEnv(const TrainConfig& config, Rng rng)
    : task_(config.physics, config.limit_deg, std::move(rng)),
      bins_(config.bins),
      actions_(config.actions) {}

std::size_t BinnedPendulumEnv::reset() {
  return bin_pitch(rad_to_deg(task_.reset().pitch), bins_);
}

EnvStep<std::size_t> BinnedPendulumEnv::step(std::size_t action) {
  const auto r = task_.step(actions_.value(action));
  return {bin_pitch(rad_to_deg(r.state.pitch), bins_), r.terminated};
}

QLearningRun run_q_learning(const TrainConfig& config) {
  require_algo(config, Algo::QLearning);
  auto policy_rng = Rng::for_stream(config.seed, RngStream::PolicyInit);
  auto explore = Rng::for_stream(config.seed, RngStream::Exploration);
  BinnedPendulumEnv env(config, Rng::for_stream(config.seed, RngStream::Environment));

  QTable table = init_qtable(config.bins.count, config.actions.size(), policy_rng);
  const QLearningSettings settings{config.update(), config.epsilon, config.episodes,
                                   limits_of(config)};
  auto log = q_learning_loop(env, table, settings, explore);
  return {std::move(log), std::move(table)};
}

DqnRun run_dqn(const TrainConfig& config) {
  require_algo(config, Algo::Dqn);
  auto init_rng = Rng::for_stream(config.seed, RngStream::NetworkInit);
  auto explore = Rng::for_stream(config.seed, RngStream::Exploration);
  auto replay_rng = Rng::for_stream(config.seed, RngStream::Replay);
  ObservedPendulumEnv env(config, Rng::for_stream(config.seed, RngStream::Environment));

  Mlp net = init_network(config.layer_sizes, init_rng);
  ReplayBuffer buffer(config.buffer_capacity);
  const auto limits = limits_of(config);

  EpisodeLog log;
  log.reserve(static_cast<std::size_t>(config.episodes));
  double epsilon = config.epsilon.start;
  for (long e = 0; e < config.episodes; ++e) {
    DqnActor actor{net, buffer, explore, epsilon};
    const auto out = run_episode(env, actor, limits);

    std::optional<double> mean_loss;
    if (!buffer.empty() && config.batches_per_episode > 0) {
      double total = 0.0;
      for (std::size_t b = 0; b < config.batches_per_episode; ++b) {
        const auto batch = buffer.sample_minibatch(config.batch_size, replay_rng);
        total += train_on_minibatch(net, batch, config.gamma, config.lr, config.loss).mean_loss;
      }
      mean_loss = total / static_cast<double>(config.batches_per_episode);
    }
    log.push_back({e, out.reward, out.steps, epsilon, mean_loss, out.passed});
    epsilon = config.epsilon.next(epsilon);
  }
  return {std::move(log), std::move(net)};
}

EpisodeLog run_pid_baseline(const TrainConfig& config) {
  require_algo(config, Algo::PidBaseline);
  PendulumTask task(config.physics, config.limit_deg,
                    Rng::for_stream(config.seed, RngStream::Environment));
  PidEnv env(task);
  const auto limits = limits_of(config);

  EpisodeLog log;
  log.reserve(static_cast<std::size_t>(config.episodes));
  for (long e = 0; e < config.episodes; ++e) {
    PidAgent agent{config.pid, config.physics.control_period, {}};
    const auto out = run_episode(env, agent, limits);
    log.push_back({e, out.reward, out.steps, 0.0, std::nullopt, out.passed});
  }
  return log;
}

TrainingRun run_training(const TrainConfig& config) {
  switch (config.algo) {
    case Algo::QLearning: {
      auto run = run_q_learning(config);
      return {std::move(run.log), std::move(run.table), std::nullopt};
    }
    case Algo::Dqn: {
      auto run = run_dqn(config);
      return {std::move(run.log), std::nullopt, std::move(run.net)};
    }
    case Algo::PidBaseline:
      return {run_pid_baseline(config), std::nullopt, std::nullopt};
  }
  throw std::logic_error("unreachable algo");
}

}  // namespace sbrl
