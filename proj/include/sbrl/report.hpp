#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbrl/training.hpp"

namespace sbrl {

inline constexpr const char* kCsvHeader = "episode,reward,steps,epsilon,mean_loss,passed";

/// One row per episode; mean_loss is empty when no training happened.
void write_csv(std::ostream& out, const EpisodeLog& log);
EpisodeLog parse_csv(std::istream& in);

/// Throws std::runtime_error naming the path when it cannot be written.
void export_csv(const EpisodeLog& log, const std::filesystem::path& path);
EpisodeLog read_csv(const std::filesystem::path& path);

struct NamedLog {
  std::string name;
  EpisodeLog log;
};

struct PlotOptions {
  std::string title = "Rewards vs Episodes";
  /// The y axis always covers these bounds when given, plus the data range.
  std::optional<double> y_min;
  std::optional<double> y_max;
  int width = 800;
  int height = 480;
};

/// Self-contained SVG with axes, one polyline per log and a legend.
std::string render_reward_svg(const std::vector<NamedLog>& logs, const PlotOptions& options = {});
void render_reward_plot(const std::vector<NamedLog>& logs, const std::filesystem::path& path,
                        const PlotOptions& options = {});

}  // namespace sbrl
