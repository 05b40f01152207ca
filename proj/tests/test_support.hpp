#pragma once

#include <cstddef>
#include <vector>

namespace sbrl::testing {

/// Upper 1% points of the chi-square distribution.
inline constexpr double kChi2Crit99Df9 = 21.665994333461924;
inline constexpr double kChi2Crit99Df999 = 1105.9169575045823;

inline double chi_square(const std::vector<std::size_t>& observed,
                         const std::vector<double>& expected_prob, std::size_t n) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected_prob[i] * static_cast<double>(n);
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
  }
  return stat;
}

inline double chi_square_uniform(const std::vector<std::size_t>& observed, std::size_t n) {
  return chi_square(observed, std::vector<double>(observed.size(), 1.0 / observed.size()), n);
}

}  // namespace sbrl::testing
