#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "sbrl/pendulum_env.hpp"

namespace sbrl {

/// Uniform pitch grid in degrees. Bins are half-open [edge, edge + width)
/// except the last, which also owns `hi`; out-of-range pitches clamp to the
/// edge bins.
struct StateBins {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t count = 20;

  void validate() const;
  double width() const { return (hi - lo) / static_cast<double>(count); }

  friend bool operator==(const StateBins&, const StateBins&) = default;
};

/// Ordered motor commands selectable by the agents.
class ActionTable {
 public:
  ActionTable();
  /// Throws std::invalid_argument unless values are finite and strictly increasing.
  explicit ActionTable(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  /// Throws std::out_of_range for an index past the table.
  double value(std::size_t index) const;

  friend bool operator==(const ActionTable&, const ActionTable&) = default;

 private:
  std::vector<double> values_;
};

enum class ObsMode { PitchOnly, PitchAndRate };

std::size_t obs_dim(ObsMode mode);
std::string_view to_string(ObsMode mode);
ObsMode parse_obs_mode(std::string_view text);

std::size_t bin_pitch(double pitch_deg, const StateBins& bins);
/// Throws std::out_of_range for an index outside [0, count).
double bin_center(std::size_t index, const StateBins& bins);
double action_value(std::size_t index, const ActionTable& table);

/// Network input: pitch in units of 10 degrees, plus pitch rate in units of
/// 2 rad/s when requested.
std::vector<double> make_obs(const SimState& state, ObsMode mode);

}  // namespace sbrl
