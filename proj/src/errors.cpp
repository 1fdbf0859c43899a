#include "tropmech/errors.hpp"

namespace tropmech {

namespace {

std::string cycle_text(const std::vector<std::size_t>& cycle) {
  std::string s;
  for (std::size_t node : cycle) {
    s += std::to_string(node + 1);
    s += " -> ";
  }
  if (!cycle.empty()) s += std::to_string(cycle.front() + 1);
  return s;
}

}  // namespace

NegativeCycleError::NegativeCycleError(std::vector<std::size_t> cycle)
    : std::runtime_error("negative cycle: " + cycle_text(cycle)), cycle_(std::move(cycle)) {}

NotIcError::NotIcError(std::vector<std::size_t> cycle)
    : std::runtime_error("outcome function is not incentive compatible (negative cycle " +
                         cycle_text(cycle) + ")"),
      cycle_(std::move(cycle)) {}

BudgetExceededError::BudgetExceededError(std::string required, unsigned long long budget)
    : std::runtime_error("enumeration needs " + required + " assignments, budget is " +
                         std::to_string(budget)),
      required_(std::move(required)),
      budget_(budget) {}

}  // namespace tropmech
