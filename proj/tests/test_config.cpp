#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sbrl/config.hpp"

namespace sbrl {
namespace {

TEST(ParseConfig, EmptyTextGivesDefaults) {
  EXPECT_EQ(parse_config(""), TrainConfig{});
  EXPECT_EQ(parse_config("# only a comment\n\n   \n"), TrainConfig{});
}

TEST(ParseConfig, DefaultValues) {
  const TrainConfig c;
  EXPECT_EQ(c.alpha, 0.8);
  EXPECT_EQ(c.gamma, 0.999);
  EXPECT_EQ(c.pen, -100.0);
  EXPECT_EQ(c.limit_deg, 5.0);
  EXPECT_EQ(c.epsilon, (EpsilonSchedule{1.0, 0.99, 0.05}));
  EXPECT_EQ(c.layer_sizes, (std::vector<std::size_t>{1, 20, 20, 10}));
  EXPECT_EQ(c.batch_size, 64u);
  EXPECT_EQ(c.buffer_capacity, 10000u);
  EXPECT_EQ(c.loss, LossKind::L1);
}

TEST(ParseConfig, SingleKeyOverride) {
  const auto c = parse_config("alpha = 0.65\n");
  EXPECT_EQ(c.alpha, 0.65);
  auto expected = TrainConfig{};
  expected.alpha = 0.65;
  EXPECT_EQ(c, expected);
}

TEST(ParseConfig, ListsAndEnums) {
  const auto c = parse_config(
      "algo = dqn  # trailing comment\n"
      "layer_sizes = 2, 40, 40, 10\n"
      "obs_mode = pitch-and-rate\n"
      "loss = squared\n"
      "update_rule = paper-literal\n"
      "actions = -5, 0, 5\n");
  EXPECT_EQ(c.algo, Algo::Dqn);
  EXPECT_EQ(c.layer_sizes, (std::vector<std::size_t>{2, 40, 40, 10}));
  EXPECT_EQ(c.obs_mode, ObsMode::PitchAndRate);
  EXPECT_EQ(c.loss, LossKind::Squared);
  EXPECT_EQ(c.update_rule, UpdateVariant::PaperLiteral);
  EXPECT_EQ(c.actions.values(), (std::vector<double>{-5, 0, 5}));
}

TEST(ParseConfig, UnknownKeyNamesKeyAndLine) {
  try {
    parse_config("gamma = 0.9\nalpa = 0.8\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("alpa"), std::string::npos);
  }
}

TEST(ParseConfig, MalformedLinesAndValues) {
  EXPECT_THROW(parse_config("alpha 0.8\n"), ConfigError);
  EXPECT_THROW(parse_config("alpha = fast\n"), ConfigError);
  EXPECT_THROW(parse_config("episodes = -3\n"), ConfigError);
  EXPECT_THROW(parse_config("algo = sarsa\n"), ConfigError);
  EXPECT_THROW(parse_config("actions = 5, 1\n"), ConfigError);
}

TEST(ConfigText, RoundTripsEveryKey) {
  TrainConfig c;
  c.name = "custom";
  c.algo = Algo::Dqn;
  c.alpha = 0.123456789012345;
  c.gamma = 0.9;
  c.update_rule = UpdateVariant::PaperLiteral;
  c.epsilon = {0.5, 0.9, 0.01};
  c.episodes = 77;
  c.iterations = 321;
  c.pen = -50.5;
  c.limit_deg = 4.5;
  c.target = 300;
  c.layer_sizes = {2, 8, 10};
  c.obs_mode = ObsMode::PitchAndRate;
  c.buffer_capacity = 99;
  c.batch_size = 7;
  c.batches_per_episode = 3;
  c.lr = 1e-3;
  c.loss = LossKind::Squared;
  c.seed = 18446744073709551615ull;
  c.physics.pitch_damping = 0.05;
  c.physics.init_pitch = 0.1;
  c.pid.kp = 1.0 / 3.0;
  c.bins = {-8, 8, 16};
  c.actions = ActionTable(std::vector<double>{-1, 2});
  const auto text = to_config_text(c);
  EXPECT_EQ(parse_config(text), c);
  for (const auto& key : config_keys()) {
    EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
  }
}

TEST(ConfigKeys, CanonicalList) {
  const std::vector<std::string> expected{
      "name", "algo", "alpha", "gamma", "update_rule", "epsilon_start", "epsilon_decay",
      "epsilon_floor", "episodes", "iterations", "pen", "limit_deg", "target", "layer_sizes",
      "obs_mode", "buffer_capacity", "batch_size", "batches_per_episode", "lr", "loss", "seed",
      "physics.pendulum_length", "physics.gravity", "physics.pitch_damping",
      "physics.command_gain", "physics.accel_limit", "physics.control_period", "physics.substep",
      "physics.init_pitch", "physics.init_pitch_jitter", "physics.warmup_time", "pid.kp",
      "pid.ki", "pid.kd", "pid.integral_clamp", "bins.lo", "bins.hi", "bins.count", "actions"};
  EXPECT_EQ(config_keys(), expected);
}

TEST(Validate, WarnsWhenTargetUnreachable) {
  TrainConfig c;
  c.iterations = 200;
  c.target = 2000;
  const auto warnings = c.validate();
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("target"), std::string::npos);
  c.target = 200;
  EXPECT_TRUE(c.validate().empty());
}

TEST(Validate, RejectsUnusableValues) {
  auto bad = [](auto mutate) {
    TrainConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](TrainConfig& c) { c.episodes = 0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](TrainConfig& c) { c.alpha = 1.5; }).validate(), ConfigError);
  EXPECT_THROW(bad([](TrainConfig& c) { c.gamma = -0.1; }).validate(), ConfigError);
  EXPECT_THROW(bad([](TrainConfig& c) { c.limit_deg = 0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](TrainConfig& c) { c.epsilon.decay = 1.5; }).validate(), ConfigError);
  EXPECT_THROW(bad([](TrainConfig& c) { c.physics.substep = 0.03; }).validate(), ConfigError);
  EXPECT_THROW(bad([](TrainConfig& c) { c.bins.count = 0; }).validate(), ConfigError);
}

TEST(Validate, DqnShapeMustMatchObservationAndActions) {
  TrainConfig c;
  c.algo = Algo::Dqn;
  EXPECT_NO_THROW(c.validate());
  c.layer_sizes = {2, 20, 10};
  EXPECT_THROW(c.validate(), ConfigError);
  c.obs_mode = ObsMode::PitchAndRate;
  EXPECT_NO_THROW(c.validate());
  c.layer_sizes = {2, 20, 9};
  EXPECT_THROW(c.validate(), ConfigError);
  c.layer_sizes = {2, 10};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(LoadConfig, NameDefaultsToFileStemAndErrorsNameFile) {
  const auto dir = std::filesystem::temp_directory_path() / "sbrl_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "my-run.cfg";
  {
    std::ofstream(path) << "alpha = 0.7\n";
  }
  const auto c = load_config(path);
  EXPECT_EQ(c.name, "my-run");
  EXPECT_EQ(c.alpha, 0.7);

  {
    std::ofstream(path) << "name = explicit\n\nbogus = 1\n";
  }
  try {
    load_config(path);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    const std::string what = e.what();
    EXPECT_NE(what.find("my-run.cfg"), std::string::npos);
    EXPECT_NE(what.find("bogus"), std::string::npos);
  }
  EXPECT_THROW(load_config(dir / "missing.cfg"), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sbrl
