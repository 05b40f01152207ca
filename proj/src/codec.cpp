#include "sbrl/codec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sbrl {

void StateBins::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("StateBins: need finite lo < hi");
  }
  if (count < 2) {
    throw std::invalid_argument("StateBins: count must be >= 2");
  }
}

ActionTable::ActionTable()
    : values_{-200.0, -100.0, -50.0, -25.0, -10.0, 10.0, 25.0, 50.0, 100.0, 200.0} {}

ActionTable::ActionTable(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("ActionTable: empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("ActionTable: non-finite value");
    }
    if (i > 0 && !(values_[i - 1] < values_[i])) {
      throw std::invalid_argument("ActionTable: values must be strictly increasing");
    }
  }
}

double ActionTable::value(std::size_t index) const {
  if (index >= values_.size()) {
    throw std::out_of_range("action index " + std::to_string(index) + " out of range");
  }
  return values_[index];
}

std::size_t obs_dim(ObsMode mode) { return mode == ObsMode::PitchOnly ? 1 : 2; }

std::string_view to_string(ObsMode mode) {
  return mode == ObsMode::PitchOnly ? "pitch-only" : "pitch-and-rate";
}

ObsMode parse_obs_mode(std::string_view text) {
  if (text == "pitch-only") return ObsMode::PitchOnly;
  if (text == "pitch-and-rate") return ObsMode::PitchAndRate;
  throw std::invalid_argument("unknown obs mode '" + std::string(text) + "'");
}

std::size_t bin_pitch(double pitch_deg, const StateBins& bins) {
  const double pos = std::floor((pitch_deg - bins.lo) / bins.width());
  if (!(pos > 0.0)) {
    return 0;
  }
  const auto last = static_cast<double>(bins.count - 1);
  return pos >= last ? bins.count - 1 : static_cast<std::size_t>(pos);
}

double bin_center(std::size_t index, const StateBins& bins) {
  if (index >= bins.count) {
    throw std::out_of_range("bin index " + std::to_string(index) + " out of range");
  }
  return bins.lo + (static_cast<double>(index) + 0.5) * bins.width();
}

double action_value(std::size_t index, const ActionTable& table) { return table.value(index); }

std::vector<double> make_obs(const SimState& state, ObsMode mode) {
  const double pitch = rad_to_deg(state.pitch) / 10.0;
  if (mode == ObsMode::PitchOnly) {
    return {pitch};
  }
  return {pitch, state.pitch_rate / 2.0};
}

}  // namespace sbrl
