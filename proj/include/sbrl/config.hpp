#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sbrl/codec.hpp"
#include "sbrl/pendulum_env.hpp"
#include "sbrl/tabular_q.hpp"
#include "sbrl/tinynet.hpp"

namespace sbrl {

enum class Algo { QLearning, Dqn, PidBaseline };

std::string_view to_string(Algo algo);
Algo parse_algo(std::string_view text);

/// Exploration rate for episode e is max(floor, start * decay^e), applied by
/// repeated multiplication after each episode.
struct EpsilonSchedule {
  double start = 1.0;
  double decay = 0.99;
  double floor = 0.05;

  double next(double current) const;

  friend bool operator==(const EpsilonSchedule&, const EpsilonSchedule&) = default;
};

struct TrainConfig {
  std::string name;  // empty: derived from the config file name
  Algo algo = Algo::QLearning;

  // Tabular update.
  double alpha = 0.8;
  double gamma = 0.999;
  UpdateVariant update_rule = UpdateVariant::Standard;

  EpsilonSchedule epsilon;

  long episodes = 1500;
  long iterations = 2000;
  double pen = -100.0;
  double limit_deg = 5.0;
  double target = 2000.0;

  // DQN.
  std::vector<std::size_t> layer_sizes{1, 20, 20, 10};
  ObsMode obs_mode = ObsMode::PitchOnly;
  std::size_t buffer_capacity = 10000;
  std::size_t batch_size = 64;
  std::size_t batches_per_episode = 1;
  double lr = 0.01;
  LossKind loss = LossKind::L1;

  std::uint64_t seed = 0;

  PhysicsParams physics;
  PidGains pid;
  StateBins bins;
  ActionTable actions;

  UpdateRule update() const { return {update_rule, alpha, gamma}; }

  /// Throws ConfigError for values no run can use; returns warnings for
  /// suspicious but runnable settings.
  std::vector<std::string> validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, int line = 0, const std::string& origin = {});
  /// 1-based line of the offending entry, 0 when not tied to a line.
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
};

/// Every key accepted in a config file, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; `#` starts a comment. Unspecified keys keep
/// their defaults, unknown keys are an error naming the key.
TrainConfig parse_config(std::string_view text);
TrainConfig load_config(const std::filesystem::path& path);

/// Renders every key so that parse_config(to_config_text(c)) == c.
std::string to_config_text(const TrainConfig& config);

}  // namespace sbrl
