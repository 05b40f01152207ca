#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "sbrl/report.hpp"

namespace sbrl {
namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

EpisodeLog sample_log() {
  return {{0, -100.0, 0, 1.0, std::nullopt, false},
          {1, 37.0 - 100.0, 37, 0.99, 12.5, false},
          {2, 200.0, 200, 0.9801, 0.1 + 0.2, false},
          {3, 250.0, 250, 0.970299, 1e-300, true}};
}

TEST(Csv, SingleEpisodeHasHeaderAndOneRow) {
  std::ostringstream out;
  write_csv(out, {{0, -100.0, 0, 1.0, std::nullopt, false}});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n0,-100,0,1,,0\n");
}

TEST(Csv, RoundTripIsLossless) {
  std::stringstream buf;
  write_csv(buf, sample_log());
  EXPECT_EQ(parse_csv(buf), sample_log());
}

TEST(Csv, RejectsMalformedInput) {
  std::istringstream no_header("0,1,2,3,,0\n");
  EXPECT_THROW(parse_csv(no_header), std::invalid_argument);
  std::istringstream short_row(std::string(kCsvHeader) + "\n0,1,2\n");
  EXPECT_THROW(parse_csv(short_row), std::invalid_argument);
  std::istringstream bad_flag(std::string(kCsvHeader) + "\n0,1,2,3,,7\n");
  EXPECT_THROW(parse_csv(bad_flag), std::invalid_argument);
}

TEST(Csv, ExportAndReadFile) {
  const auto path = std::filesystem::temp_directory_path() / "sbrl_report_test.csv";
  export_csv(sample_log(), path);
  EXPECT_EQ(read_csv(path), sample_log());
  std::filesystem::remove(path);
}

TEST(Csv, UnwritablePathIsNamed) {
  const auto path = std::filesystem::path("/nonexistent-dir/sub/run.csv");
  try {
    export_csv(sample_log(), path);
    FAIL() << "expected runtime_error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
  }
  EXPECT_THROW(export_csv({}, "unused.csv"), std::invalid_argument);
}

TEST(Svg, OnePolylineAndLegendEntryPerLog) {
  const auto svg = render_reward_svg({{"alpha 0.65", sample_log()},
                                      {"alpha 0.7", sample_log()},
                                      {"a<b & c", sample_log()}});
  EXPECT_EQ(count_of(svg, "<polyline"), 3u);
  const auto legend = svg.substr(svg.find("<g class=\"legend\">"));
  EXPECT_EQ(count_of(legend, "<text"), 3u);
  EXPECT_NE(legend.find("alpha 0.65"), std::string::npos);
  EXPECT_NE(legend.find("a&lt;b &amp; c"), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, YRangeCoversBoundsAndData) {
  PlotOptions opts;
  opts.y_min = -100;
  opts.y_max = 2000;
  auto svg = render_reward_svg({{"r", sample_log()}}, opts);
  EXPECT_NE(svg.find("data-y-min=\"-100\""), std::string::npos);
  EXPECT_NE(svg.find("data-y-max=\"2000\""), std::string::npos);

  opts.y_min = 0;
  opts.y_max = 100;
  svg = render_reward_svg({{"r", sample_log()}}, opts);
  EXPECT_NE(svg.find("data-y-min=\"-100\""), std::string::npos);
  EXPECT_NE(svg.find("data-y-max=\"250\""), std::string::npos);
}

TEST(Svg, PolylineHasOnePointPerEpisode) {
  const auto svg = render_reward_svg({{"r", sample_log()}});
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
  EXPECT_EQ(count_of(m[1].str(), ",") , sample_log().size());
}

TEST(Svg, RejectsEmptyInput) {
  EXPECT_THROW(render_reward_svg({}), std::invalid_argument);
  EXPECT_THROW(render_reward_svg({{"empty", {}}}), std::invalid_argument);
}

}  // namespace
}  // namespace sbrl
