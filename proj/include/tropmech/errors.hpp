#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropmech {

/// Malformed input or a violated precondition (dimension mismatch,
/// non-surjective outcome function, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cycle of negative total weight. `cycle` lists the nodes in traversal
/// order, starting from the smallest node; the closing edge back to the
/// first node is implied.
class NegativeCycleError : public std::runtime_error {
 public:
  explicit NegativeCycleError(std::vector<std::size_t> cycle);
  const std::vector<std::size_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

/// The outcome function admits no incentive compatible payment.
class NotIcError : public std::runtime_error {
 public:
  explicit NotIcError(std::vector<std::size_t> cycle);
  const std::vector<std::size_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

class NotRealizableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The number of assignments m^r exceeds the enumeration budget.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(std::string required, unsigned long long budget);
  const std::string& required() const { return required_; }
  unsigned long long budget() const { return budget_; }

 private:
  std::string required_;
  unsigned long long budget_;
};

class PerturbationFailedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionUnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes disagreed. Never expected to fire.
class CrossCheckViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tropmech
