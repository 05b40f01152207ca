#pragma once

// Independent reference computations used by the unit and acceptance suites.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbrl/codec.hpp"
#include "sbrl/tabular_q.hpp"
#include "sbrl/tinynet.hpp"
#include "sbrl/training.hpp"

namespace sbrl::oracle {

struct GradCheck {
  double max_rel_error = 0.0;
  std::size_t compared = 0;
  std::size_t skipped_kinks = 0;
};

/// Compares backward() against central finite differences of
/// <output_grad, forward(net, input)> for every parameter. Components whose
/// +-h perturbation flips any ReLU on or off are skipped.
GradCheck finite_difference_check(const Mlp& net, std::span<const double> input,
                                  std::span<const double> output_grad, double h = 1e-5);

/// Random network of the given shape with nonzero biases, so the check also
/// covers kinks away from the origin.
Mlp random_network(const std::vector<std::size_t>& sizes, Rng& rng);

/// Deterministic two-state, two-action task. From state 0 action 0 moves to
/// state 1 and action 1 falls; from state 1 action 1 returns to state 0 and
/// action 0 falls. Episodes start in state 0.
class MiniMdp {
 public:
  std::size_t reset() {
    state_ = 0;
    return state_;
  }
  EnvStep<std::size_t> step(std::size_t action);

  static constexpr std::size_t kStates = 2;
  static constexpr std::size_t kActions = 2;
  /// (next state, fell) for every state/action pair.
  static EnvStep<std::size_t> transition(std::size_t state, std::size_t action);

 private:
  std::size_t state_ = 0;
};

/// Q* of MiniMdp with reward +1 per surviving step and `pen` on a fall,
/// by value iteration to machine precision.
std::vector<std::vector<double>> mini_mdp_value_iteration(double gamma, double pen);

/// Single-expression Q update on plain numbers.
double reference_q_update(double q, double r, double max_next, bool terminal,
                          UpdateVariant variant, double alpha, double gamma);

/// Applies `updates` random q_update calls to a QTable and to a plain 2D
/// array driven by reference_q_update. Returns the number of cells that are
/// not bit-identical at the end plus the number of steps whose stored policy
/// disagreed with the row maximum.
std::size_t q_update_mismatches(UpdateVariant variant, int updates, std::uint64_t seed);

/// Repeated self-loop updates with reward 1 until Q exceeds 10 / (1 - gamma).
/// Returns the number of updates taken, or `cap` when the bound was not
/// crossed.
int updates_to_exceed_bound(const UpdateRule& rule, int cap);

struct CodecScanResult {
  bool partition = true;      // every point lands in one bin, bins non-decreasing
  bool covers_all_bins = true;
  bool round_trip = true;     // bin_pitch(bin_center(i)) == i
  bool antisymmetry = true;   // off-boundary points and the action table
};

/// Uniform scan of [lo, hi) with `points` samples, checked against a linear
/// search over the bin edges.
CodecScanResult codec_scan(const StateBins& bins, const ActionTable& actions, std::size_t points);

}  // namespace sbrl::oracle
