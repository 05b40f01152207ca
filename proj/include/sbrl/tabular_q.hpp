#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "sbrl/rng.hpp"

namespace sbrl {

enum class UpdateVariant {
  /// Watkins: Q += alpha * (r + gamma * max Q' - Q).
  Standard,
  /// Q += alpha * (r + gamma * max Q'), without the -Q term. Diverges under
  /// a constant positive reward; kept for fidelity experiments.
  PaperLiteral,
};

std::string_view to_string(UpdateVariant variant);
UpdateVariant parse_update_variant(std::string_view text);

struct UpdateRule {
  UpdateVariant variant = UpdateVariant::Standard;
  double alpha = 0.8;
  double gamma = 0.999;

  /// Throws std::invalid_argument unless alpha is in (0, 1] and gamma in [0, 1].
  void validate() const;
};

/// Action-value table (rows are state bins, columns are actions) together
/// with the stored greedy policy.
class QTable {
 public:
  /// All values zero, policy initialized to action 0 everywhere.
  QTable(std::size_t states, std::size_t actions);

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  double value(std::size_t s, std::size_t a) const;
  std::span<const double> row(std::size_t s) const;
  std::size_t policy(std::size_t s) const;
  const std::vector<std::size_t>& policy() const { return policy_; }

  /// Overwrites one entry and refreshes the policy for that state.
  void set_value(std::size_t s, std::size_t a, double v);
  void set_policy(std::size_t s, std::size_t a);
  double max_value(std::size_t s) const;
  /// Lowest-index argmax of row `s`.
  std::size_t argmax(std::size_t s) const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  void check_state(std::size_t s) const;
  void check_action(std::size_t a) const;

  std::size_t states_;
  std::size_t actions_;
  std::vector<double> values_;
  std::vector<std::size_t> policy_;
};

/// Zero values and a uniformly random policy (one draw per state, in order).
QTable init_qtable(std::size_t states, std::size_t actions, Rng& rng);

/// Applies one update at (s, a). Terminal transitions use the reward alone as
/// the target. Afterwards policy[s] is the lowest-index argmax of row s.
void q_update(QTable& table, std::size_t s, std::size_t a, double reward, std::size_t s_next,
              bool terminal, const UpdateRule& rule);

std::size_t greedy_action(const QTable& table, std::size_t s);

/// Draws u in [0, 1); explores with a uniform action when u < epsilon (so
/// epsilon = 1 always explores and epsilon = 0 never does).
std::size_t epsilon_greedy(const QTable& table, std::size_t s, double epsilon, Rng& rng);

/// Tab-separated grid, one line per state bin.
void write_qtable(std::ostream& out, const QTable& table);
/// Reads a grid written by write_qtable; the policy is rebuilt from argmax.
QTable read_qtable(std::istream& in);

}  // namespace sbrl
