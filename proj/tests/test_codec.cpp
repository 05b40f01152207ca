#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sbrl/codec.hpp"

namespace sbrl {
namespace {

TEST(BinPitch, Examples) {
  const StateBins bins;
  EXPECT_DOUBLE_EQ(bins.width(), 1.0);
  EXPECT_EQ(bin_pitch(-10.0, bins), 0u);
  EXPECT_EQ(bin_pitch(0.0, bins), 10u);
  EXPECT_EQ(bin_pitch(12.3, bins), 19u);
  EXPECT_EQ(bin_pitch(-40.0, bins), 0u);
  EXPECT_EQ(bin_pitch(10.0, bins), 19u);
  EXPECT_EQ(bin_pitch(9.999, bins), 19u);
  EXPECT_EQ(bin_pitch(-0.001, bins), 9u);
}

TEST(BinPitch, ZeroMatchesExhaustiveScan) {
  // Scan oracle: the bin owning 0 is the one whose [edge, edge + 1) contains it.
  const StateBins bins;
  std::size_t owner = bins.count;
  for (std::size_t i = 0; i < bins.count; ++i) {
    const double edge = -10.0 + static_cast<double>(i);
    if (edge <= 0.0 && 0.0 < edge + 1.0) owner = i;
  }
  EXPECT_EQ(owner, 10u);
  EXPECT_EQ(bin_pitch(0.0, bins), owner);
}

TEST(BinPitch, DenseScanAgainstLinearSearch) {
  const auto r = oracle::codec_scan(StateBins{}, ActionTable{}, 1000000);
  EXPECT_TRUE(r.partition);
  EXPECT_TRUE(r.covers_all_bins);
  EXPECT_TRUE(r.round_trip);
  EXPECT_TRUE(r.antisymmetry);
  const auto custom = oracle::codec_scan(StateBins{-8.0, 8.0, 16}, ActionTable(std::vector<double>{-3, -1, 1, 3}), 100000);
  EXPECT_TRUE(custom.partition);
  EXPECT_TRUE(custom.antisymmetry);
}

TEST(BinCenter, ExamplesAndRoundTrip) {
  const StateBins bins;
  EXPECT_DOUBLE_EQ(bin_center(0, bins), -9.5);
  EXPECT_DOUBLE_EQ(bin_center(19, bins), 9.5);
  for (std::size_t i = 0; i < bins.count; ++i) {
    EXPECT_EQ(bin_pitch(bin_center(i, bins), bins), i);
  }
  EXPECT_THROW(bin_center(20, bins), std::out_of_range);
}

TEST(BinPitch, CustomGrid) {
  const StateBins bins{-6.0, 6.0, 4};
  EXPECT_EQ(bin_pitch(-3.0, bins), 1u);
  EXPECT_EQ(bin_pitch(2.9, bins), 2u);
  for (std::size_t i = 0; i < bins.count; ++i) {
    EXPECT_EQ(bin_pitch(bin_center(i, bins), bins), i);
  }
}

TEST(StateBinsValidation, Rejects) {
  EXPECT_THROW((StateBins{1.0, 1.0, 20}.validate()), std::invalid_argument);
  EXPECT_THROW((StateBins{-1.0, 1.0, 1}.validate()), std::invalid_argument);
}

TEST(ActionTable, DefaultValues) {
  const ActionTable table;
  ASSERT_EQ(table.size(), 10u);
  EXPECT_EQ(action_value(0, table), -200.0);
  EXPECT_EQ(action_value(9, table), 200.0);
  EXPECT_EQ(action_value(4, table), -10.0);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(action_value(i, table), -action_value(9 - i, table));
  }
  EXPECT_THROW(action_value(10, table), std::out_of_range);
}

TEST(ActionTable, RejectsUnorderedValues) {
  EXPECT_THROW(ActionTable({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ActionTable(std::vector<double>{}), std::invalid_argument);
  EXPECT_NO_THROW(ActionTable({-1.0, 2.0}));
}

TEST(MakeObs, Examples) {
  SimState s;
  EXPECT_EQ(make_obs(s, ObsMode::PitchOnly), std::vector<double>{0.0});
  s.pitch = deg_to_rad(5.0);
  EXPECT_DOUBLE_EQ(make_obs(s, ObsMode::PitchOnly)[0], 0.5);
  s.pitch = deg_to_rad(-10.0);
  s.pitch_rate = 1.0;
  const auto obs = make_obs(s, ObsMode::PitchAndRate);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_DOUBLE_EQ(obs[0], -1.0);
  EXPECT_DOUBLE_EQ(obs[1], 0.5);
  EXPECT_EQ(obs_dim(ObsMode::PitchOnly), 1u);
  EXPECT_EQ(obs_dim(ObsMode::PitchAndRate), 2u);
}

TEST(MakeObs, InjectiveOnDistinctPitches) {
  Rng rng(4);
  for (int i = 0; i < 100000; ++i) {
    SimState a, b;
    a.pitch = rng.uniform(-0.2, 0.2);
    b.pitch = a.pitch + rng.uniform(1e-12, 1e-3);
    EXPECT_LT(make_obs(a, ObsMode::PitchOnly)[0], make_obs(b, ObsMode::PitchOnly)[0]);
  }
}

TEST(ObsModeText, ParsesBothVariants) {
  EXPECT_EQ(parse_obs_mode("pitch-only"), ObsMode::PitchOnly);
  EXPECT_EQ(parse_obs_mode(to_string(ObsMode::PitchAndRate)), ObsMode::PitchAndRate);
  EXPECT_THROW(parse_obs_mode("pitch"), std::invalid_argument);
}

}  // namespace
}  // namespace sbrl
