// Command-line front end: train one config, sweep several, or re-plot CSVs.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sbrl/config.hpp"
#include "sbrl/report.hpp"
#include "sbrl/text.hpp"
#include "sbrl/training.hpp"

namespace fs = std::filesystem;
using namespace sbrl;

namespace {

TrainConfig load_with_overrides(const std::string& path, std::optional<std::uint64_t> seed) {
  auto config = load_config(path);
  if (seed) {
    config.seed = *seed;
  }
  for (const auto& w : config.validate()) {
    std::cerr << "warning: " << config.name << ": " << w << '\n';
  }
  return config;
}

PlotOptions plot_bounds(const std::vector<TrainConfig>& configs, std::string title) {
  PlotOptions opts;
  opts.title = std::move(title);
  for (const auto& c : configs) {
    const double hi = static_cast<double>(c.iterations);
    opts.y_min = std::min(opts.y_min.value_or(c.pen), c.pen);
    opts.y_max = std::max(opts.y_max.value_or(hi), hi);
  }
  return opts;
}

void write_model(const fs::path& dir, const std::string& name, const TrainingRun& run) {
  if (run.table) {
    const auto path = dir / (name + ".qtable.txt");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_qtable(out, *run.table);
  }
  if (run.net) {
    const auto path = dir / (name + ".net.txt");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_network(out, *run.net);
  }
}

void summarize(const TrainConfig& config, const EpisodeLog& log) {
  double best = log.front().reward;
  long first_max = -1;
  for (const auto& r : log) {
    best = std::max(best, r.reward);
    if (first_max < 0 && r.reward >= static_cast<double>(config.iterations)) {
      first_max = r.episode;
    }
  }
  std::cout << config.name << ": " << log.size() << " episodes, best reward "
            << format_double(best) << ", final reward " << format_double(log.back().reward);
  if (first_max >= 0) {
    std::cout << ", first full-length episode " << first_max;
  }
  std::cout << '\n';
}

void emit_run(const fs::path& out_dir, const TrainConfig& config, const TrainingRun& run) {
  export_csv(run.log, out_dir / (config.name + ".csv"));
  render_reward_plot({{config.name, run.log}}, out_dir / (config.name + ".svg"),
                     plot_bounds({config}, config.name));
  write_model(out_dir, config.name, run);
  summarize(config, run.log);
}

int cmd_train(const std::string& config_path, std::optional<std::uint64_t> seed,
              const fs::path& out_dir) {
  const auto config = load_with_overrides(config_path, seed);
  fs::create_directories(out_dir);
  emit_run(out_dir, config, run_training(config));
  return 0;
}

int cmd_sweep(const std::vector<std::string>& config_paths, std::optional<std::uint64_t> seed,
              const fs::path& out_dir, std::string name) {
  std::vector<TrainConfig> configs;
  for (const auto& p : config_paths) {
    configs.push_back(load_with_overrides(p, seed));
  }
  fs::create_directories(out_dir);

  std::vector<std::future<TrainingRun>> pending;
  for (const auto& c : configs) {
    pending.push_back(std::async(std::launch::async, [&c] { return run_training(c); }));
  }
  std::vector<NamedLog> logs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto run = pending[i].get();
    emit_run(out_dir, configs[i], run);
    logs.push_back({configs[i].name, std::move(run.log)});
  }
  if (name.empty()) {
    name = "sweep";
  }
  render_reward_plot(logs, out_dir / (name + ".svg"), plot_bounds(configs, name));
  return 0;
}

int cmd_plot(const std::vector<std::string>& csv_paths, const fs::path& out_path,
             const std::string& title, std::optional<double> y_min, std::optional<double> y_max) {
  std::vector<NamedLog> logs;
  for (const auto& p : csv_paths) {
    logs.push_back({fs::path(p).stem().string(), read_csv(p)});
  }
  PlotOptions opts;
  opts.title = title;
  opts.y_min = y_min;
  opts.y_max = y_max;
  if (out_path.has_parent_path()) {
    fs::create_directories(out_path.parent_path());
  }
  render_reward_plot(logs, out_path, opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-balancing robot Q-learning and DQN workbench"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";

  auto* train = app.add_subcommand("train", "Run one training config");
  std::string config_path;
  train->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  train->add_option("--seed", seed, "Override the config seed");
  train->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run several configs and plot them together");
  std::vector<std::string> sweep_configs;
  std::string sweep_name;
  sweep->add_option("--config,configs", sweep_configs, "Config files")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--seed", seed, "Override every config seed");
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--name", sweep_name, "Name of the combined plot");

  auto* plot = app.add_subcommand("plot", "Render reward curves from CSV files");
  std::vector<std::string> csvs;
  std::string plot_out = "rewards.svg";
  std::string title = "Rewards vs Episodes";
  std::optional<double> y_min;
  std::optional<double> y_max;
  plot->add_option("csv", csvs, "CSV files written by train/sweep")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output SVG path");
  plot->add_option("--title", title, "Plot title");
  plot->add_option("--ymin", y_min, "Lower y bound to include");
  plot->add_option("--ymax", y_max, "Upper y bound to include");

  auto* defaults = app.add_subcommand("defaults", "Print every config key with its default");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return cmd_train(config_path, seed, out_dir);
    if (*sweep) return cmd_sweep(sweep_configs, seed, out_dir, sweep_name);
    if (*plot) return cmd_plot(csvs, plot_out, title, y_min, y_max);
    if (*defaults) {
      std::cout << to_config_text(TrainConfig{});
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
