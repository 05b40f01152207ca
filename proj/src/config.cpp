#include "sbrl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "sbrl/text.hpp"

namespace sbrl {

std::string_view to_string(Algo algo) {
  switch (algo) {
    case Algo::QLearning:
      return "q-learning";
    case Algo::Dqn:
      return "dqn";
    case Algo::PidBaseline:
      return "pid-baseline";
  }
  return "?";
}

Algo parse_algo(std::string_view text) {
  if (text == "q-learning") return Algo::QLearning;
  if (text == "dqn") return Algo::Dqn;
  if (text == "pid-baseline") return Algo::PidBaseline;
  throw std::invalid_argument("unknown algo '" + std::string(text) + "'");
}

double EpsilonSchedule::next(double current) const { return std::max(floor, current * decay); }

ConfigError::ConfigError(std::string message, int line, const std::string& origin)
    : std::runtime_error((origin.empty() ? "" : origin + ": ") +
                         (line > 0 ? "line " + std::to_string(line) + ": " : "") + message),
      message_(std::move(message)),
      line_(line) {}

namespace {

struct KeySpec {
  std::string key;
  std::function<void(TrainConfig&, std::string_view)> set;
  std::function<std::string(const TrainConfig&)> get;
};

template <class T>
T parse_count(std::string_view text) {
  const auto v = parse_unsigned(text);
  if (v > static_cast<unsigned long long>(std::numeric_limits<T>::max())) {
    throw std::invalid_argument("integer out of range: '" + std::string(text) + "'");
  }
  return static_cast<T>(v);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += (i ? ", " : "") + parts[i];
  }
  return out;
}

KeySpec real(std::string key, double TrainConfig::*field) {
  return {std::move(key), [field](TrainConfig& c, std::string_view v) { c.*field = parse_double(v); },
          [field](const TrainConfig& c) { return format_double(c.*field); }};
}

template <class Sub>
KeySpec nested(std::string key, Sub TrainConfig::*sub, double Sub::*field) {
  return {std::move(key),
          [sub, field](TrainConfig& c, std::string_view v) { (c.*sub).*field = parse_double(v); },
          [sub, field](const TrainConfig& c) { return format_double((c.*sub).*field); }};
}

template <class T>
KeySpec count(std::string key, T TrainConfig::*field) {
  return {std::move(key),
          [field](TrainConfig& c, std::string_view v) { c.*field = parse_count<T>(v); },
          [field](const TrainConfig& c) { return std::to_string(c.*field); }};
}

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = [] {
    std::vector<KeySpec> s;
    s.push_back({"name", [](TrainConfig& c, std::string_view v) { c.name = std::string(v); },
                 [](const TrainConfig& c) { return c.name; }});
    s.push_back({"algo", [](TrainConfig& c, std::string_view v) { c.algo = parse_algo(v); },
                 [](const TrainConfig& c) { return std::string(to_string(c.algo)); }});
    s.push_back(real("alpha", &TrainConfig::alpha));
    s.push_back(real("gamma", &TrainConfig::gamma));
    s.push_back({"update_rule",
                 [](TrainConfig& c, std::string_view v) { c.update_rule = parse_update_variant(v); },
                 [](const TrainConfig& c) { return std::string(to_string(c.update_rule)); }});
    s.push_back(nested("epsilon_start", &TrainConfig::epsilon, &EpsilonSchedule::start));
    s.push_back(nested("epsilon_decay", &TrainConfig::epsilon, &EpsilonSchedule::decay));
    s.push_back(nested("epsilon_floor", &TrainConfig::epsilon, &EpsilonSchedule::floor));
    s.push_back(count("episodes", &TrainConfig::episodes));
    s.push_back(count("iterations", &TrainConfig::iterations));
    s.push_back(real("pen", &TrainConfig::pen));
    s.push_back(real("limit_deg", &TrainConfig::limit_deg));
    s.push_back(real("target", &TrainConfig::target));
    s.push_back({"layer_sizes",
                 [](TrainConfig& c, std::string_view v) {
                   c.layer_sizes.clear();
                   for (auto part : split(v, ',')) {
                     c.layer_sizes.push_back(parse_count<std::size_t>(part));
                   }
                 },
                 [](const TrainConfig& c) {
                   std::vector<std::string> parts;
                   for (auto n : c.layer_sizes) parts.push_back(std::to_string(n));
                   return join(parts);
                 }});
    s.push_back({"obs_mode", [](TrainConfig& c, std::string_view v) { c.obs_mode = parse_obs_mode(v); },
                 [](const TrainConfig& c) { return std::string(to_string(c.obs_mode)); }});
    s.push_back(count("buffer_capacity", &TrainConfig::buffer_capacity));
    s.push_back(count("batch_size", &TrainConfig::batch_size));
    s.push_back(count("batches_per_episode", &TrainConfig::batches_per_episode));
    s.push_back(real("lr", &TrainConfig::lr));
    s.push_back({"loss", [](TrainConfig& c, std::string_view v) { c.loss = parse_loss_kind(v); },
                 [](const TrainConfig& c) { return std::string(to_string(c.loss)); }});
    s.push_back(count("seed", &TrainConfig::seed));

    s.push_back(nested("physics.pendulum_length", &TrainConfig::physics, &PhysicsParams::pendulum_length));
    s.push_back(nested("physics.gravity", &TrainConfig::physics, &PhysicsParams::gravity));
    s.push_back(nested("physics.pitch_damping", &TrainConfig::physics, &PhysicsParams::pitch_damping));
    s.push_back(nested("physics.command_gain", &TrainConfig::physics, &PhysicsParams::command_gain));
    s.push_back(nested("physics.accel_limit", &TrainConfig::physics, &PhysicsParams::accel_limit));
    s.push_back(nested("physics.control_period", &TrainConfig::physics, &PhysicsParams::control_period));
    s.push_back(nested("physics.substep", &TrainConfig::physics, &PhysicsParams::substep));
    s.push_back(nested("physics.init_pitch", &TrainConfig::physics, &PhysicsParams::init_pitch));
    s.push_back(nested("physics.init_pitch_jitter", &TrainConfig::physics, &PhysicsParams::init_pitch_jitter));
    s.push_back(nested("physics.warmup_time", &TrainConfig::physics, &PhysicsParams::warmup_time));

    s.push_back(nested("pid.kp", &TrainConfig::pid, &PidGains::kp));
    s.push_back(nested("pid.ki", &TrainConfig::pid, &PidGains::ki));
    s.push_back(nested("pid.kd", &TrainConfig::pid, &PidGains::kd));
    s.push_back(nested("pid.integral_clamp", &TrainConfig::pid, &PidGains::integral_clamp));

    s.push_back(nested("bins.lo", &TrainConfig::bins, &StateBins::lo));
    s.push_back(nested("bins.hi", &TrainConfig::bins, &StateBins::hi));
    s.push_back({"bins.count",
                 [](TrainConfig& c, std::string_view v) { c.bins.count = parse_count<std::size_t>(v); },
                 [](const TrainConfig& c) { return std::to_string(c.bins.count); }});
    s.push_back({"actions",
                 [](TrainConfig& c, std::string_view v) {
                   std::vector<double> values;
                   for (auto part : split(v, ',')) values.push_back(parse_double(part));
                   c.actions = ActionTable(std::move(values));
                 },
                 [](const TrainConfig& c) {
                   std::vector<std::string> parts;
                   for (auto x : c.actions.values()) parts.push_back(format_double(x));
                   return join(parts);
                 }});
    return s;
  }();
  return specs;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& spec : key_specs()) k.push_back(spec.key);
    return k;
  }();
  return keys;
}

std::vector<std::string> TrainConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (episodes < 1) fail("episodes must be >= 1");
  if (iterations < 1) fail("iterations must be >= 1");
  if (!(limit_deg > 0.0)) fail("limit_deg must be > 0");
  if (!std::isfinite(pen) || !std::isfinite(target)) fail("pen and target must be finite");
  try {
    update().validate();
    physics.validate();
    pid.validate();
    bins.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  for (double v : {epsilon.start, epsilon.decay, epsilon.floor}) {
    if (!(v >= 0.0 && v <= 1.0)) fail("epsilon_start, epsilon_decay and epsilon_floor must be in [0, 1]");
  }
  if (algo == Algo::Dqn) {
    if (layer_sizes.size() < 2) fail("layer_sizes needs at least input and output sizes");
    if (std::find(layer_sizes.begin(), layer_sizes.end(), 0u) != layer_sizes.end()) {
      fail("layer_sizes must be positive");
    }
    if (layer_sizes.front() != obs_dim(obs_mode)) {
      fail("layer_sizes input " + std::to_string(layer_sizes.front()) + " does not match obs_mode " +
           std::string(to_string(obs_mode)));
    }
    if (layer_sizes.back() != actions.size()) {
      fail("layer_sizes output must equal the action count " + std::to_string(actions.size()));
    }
    if (buffer_capacity < 1) fail("buffer_capacity must be >= 1");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (!(lr >= 0.0) || !std::isfinite(lr)) fail("lr must be >= 0");
  }
  std::vector<std::string> warnings;
  if (target > static_cast<double>(iterations)) {
    warnings.push_back("target " + format_double(target) + " exceeds iterations " +
                       std::to_string(iterations) + "; the passed branch can never fire");
  }
  return warnings;
}

TrainConfig parse_config(std::string_view text) {
  TrainConfig config;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto& specs = key_specs();
    const auto it = std::find_if(specs.begin(), specs.end(),
                                 [&](const KeySpec& s) { return s.key == key; });
    if (it == specs.end()) {
      throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    }
    try {
      it->set(config, value);
    } catch (const std::exception& e) {
      throw ConfigError("bad value for '" + std::string(key) + "': " + e.what(), line_no);
    }
  }
  return config;
}

TrainConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    auto config = parse_config(buf.str());
    if (config.name.empty()) {
      config.name = path.stem().string();
    }
    return config;
  } catch (const ConfigError& e) {
    throw ConfigError(e.message(), e.line(), path.string());
  }
}

std::string to_config_text(const TrainConfig& config) {
  std::string out;
  for (const auto& spec : key_specs()) {
    out += spec.key + " = " + spec.get(config) + "\n";
  }
  return out;
}

}  // namespace sbrl
