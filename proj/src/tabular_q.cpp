#include "sbrl/tabular_q.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sbrl/text.hpp"

namespace sbrl {

std::string_view to_string(UpdateVariant variant) {
  return variant == UpdateVariant::Standard ? "standard" : "paper-literal";
}

UpdateVariant parse_update_variant(std::string_view text) {
  if (text == "standard") return UpdateVariant::Standard;
  if (text == "paper-literal") return UpdateVariant::PaperLiteral;
  throw std::invalid_argument("unknown update rule '" + std::string(text) + "'");
}

void UpdateRule::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1]");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must be in [0, 1]");
  }
}

QTable::QTable(std::size_t states, std::size_t actions)
    : states_(states), actions_(actions), values_(states * actions, 0.0), policy_(states, 0) {
  if (states == 0 || actions == 0) {
    throw std::invalid_argument("QTable: dimensions must be positive");
  }
}

void QTable::check_state(std::size_t s) const {
  if (s >= states_) {
    throw std::out_of_range("state index " + std::to_string(s) + " out of range");
  }
}

void QTable::check_action(std::size_t a) const {
  if (a >= actions_) {
    throw std::out_of_range("action index " + std::to_string(a) + " out of range");
  }
}

double QTable::value(std::size_t s, std::size_t a) const {
  check_state(s);
  check_action(a);
  return values_[s * actions_ + a];
}

std::span<const double> QTable::row(std::size_t s) const {
  check_state(s);
  return {values_.data() + s * actions_, actions_};
}

std::size_t QTable::policy(std::size_t s) const {
  check_state(s);
  return policy_[s];
}

void QTable::set_value(std::size_t s, std::size_t a, double v) {
  check_state(s);
  check_action(a);
  values_[s * actions_ + a] = v;
  policy_[s] = argmax(s);
}

void QTable::set_policy(std::size_t s, std::size_t a) {
  check_state(s);
  check_action(a);
  policy_[s] = a;
}

std::size_t QTable::argmax(std::size_t s) const {
  const auto r = row(s);
  std::size_t best = 0;
  for (std::size_t a = 1; a < r.size(); ++a) {
    if (r[a] > r[best]) {
      best = a;
    }
  }
  return best;
}

double QTable::max_value(std::size_t s) const { return row(s)[argmax(s)]; }

QTable init_qtable(std::size_t states, std::size_t actions, Rng& rng) {
  QTable table(states, actions);
  for (std::size_t s = 0; s < states; ++s) {
    table.set_policy(s, rng.uniform_index(actions));
  }
  return table;
}

void q_update(QTable& table, std::size_t s, std::size_t a, double reward, std::size_t s_next,
              bool terminal, const UpdateRule& rule) {
  const double q = table.value(s, a);
  const double bootstrap = table.max_value(s_next);
  const double target = terminal ? reward : reward + rule.gamma * bootstrap;
  const double next = rule.variant == UpdateVariant::Standard ? q + rule.alpha * (target - q)
                                                              : q + rule.alpha * target;
  table.set_value(s, a, next);
}

std::size_t greedy_action(const QTable& table, std::size_t s) { return table.policy(s); }

std::size_t epsilon_greedy(const QTable& table, std::size_t s, double epsilon, Rng& rng) {
  if (rng.uniform01() < epsilon) {
    return rng.uniform_index(table.actions());
  }
  return greedy_action(table, s);
}

void write_qtable(std::ostream& out, const QTable& table) {
  for (std::size_t s = 0; s < table.states(); ++s) {
    const auto r = table.row(s);
    for (std::size_t a = 0; a < r.size(); ++a) {
      out << (a ? "\t" : "") << format_double(r[a]);
    }
    out << '\n';
  }
}

QTable read_qtable(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      continue;
    }
    std::vector<double> row;
    for (auto cell : split(line, '\t')) {
      row.push_back(parse_double(cell));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("qtable: ragged row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::invalid_argument("qtable: empty input");
  }
  QTable table(rows.size(), rows.front().size());
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (std::size_t a = 0; a < rows[s].size(); ++a) {
      table.set_value(s, a, rows[s][a]);
    }
  }
  return table;
}

}  // namespace sbrl
