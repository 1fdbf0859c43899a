#pragma once

// Min-plus hyperplane arrangements of a finite type space: covectors,
// genericity, the basic cells (payment sets of IC outcome functions), generic
// perturbations and the Hausdorff convergence harness.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tropmech/mechanism.hpp"
#include "tropmech/polytrope.hpp"

namespace tropmech {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;

/// Bipartite incidence between outcomes and type entries: cell (i, e) is set
/// when p lies in min-plus sector i of the hyperplane with apex at entry e.
class Covector {
 public:
  Covector(std::size_t m, std::size_t r) : m_(m), r_(r), cells_(m * r, 0) {}

  std::size_t outcomes() const { return m_; }
  std::size_t entries() const { return r_; }
  bool operator()(std::size_t outcome, std::size_t entry) const { return cells_[outcome * r_ + entry] != 0; }
  void set(std::size_t outcome, std::size_t entry) { cells_[outcome * r_ + entry] = 1; }
  /// g is contained as a subgraph: (g(e), e) is a cell for every entry e.
  bool contains(const OutcomeFunction& g) const;

  friend bool operator==(const Covector&, const Covector&) = default;

 private:
  std::size_t m_;
  std::size_t r_;
  std::vector<char> cells_;
};

Covector covector(const TypeSpace& types, const Point& p);

/// k x k matrix (row-major) is tropically singular: the minimum of
/// sum_s M[s, sigma(s)] over permutations sigma is attained at least twice.
bool is_tropically_singular(std::span<const Rational> square, std::size_t k);

/// No k entries (2 <= k <= m) projected onto k coordinates have tropically
/// singular negation, i.e. no k hyperplanes of the min-plus arrangement with
/// apices -t meet in a common point of TP^{k-1}. Equivalently the maximum of
/// sum_s t_s[sigma(s)] is never attained twice. A multiset with repeated
/// points is never generic.
bool is_generic(const TypeSpace& types);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct BasicCell {
  Polytrope payments;
  /// IC outcome functions whose payment set is exactly `payments`, in
  /// lexicographic order of their assignments.
  std::vector<OutcomeFunction> outcome_functions;
};

struct BasicCellSet {
  /// Sorted by closure matrix.
  std::vector<BasicCell> cells;
  /// d(T): number of IC outcome functions.
  std::size_t ic_count = 0;
};

/// Exhaustive over the m^r assignments with early Rochet pruning. Throws
/// UsageError when r < m and BudgetExceededError when m^r > budget.
BasicCellSet enumerate_ic_outcomes(const TypeSpace& types,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

/// For a generic type space: exactly C(r-1, m-1) cells, all of dimension
/// m - 1. Throws CrossCheckViolation otherwise.
void verify_generic_cells(const TypeSpace& types, const BasicCellSet& set);

/// Distinct payment polytropes of IC outcome functions. For generic types
/// also checks that there are C(r-1, m-1) of them, all full-dimensional.
std::vector<Polytrope> basic_cells(const TypeSpace& types,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

struct Perturbation {
  TypeSpace types;
  /// Entry i (1-based) moves by scale * (0, i, i^2, ..., i^(m-1)).
  Rational scale;
  /// Largest coordinate change over all entries; never exceeds epsilon.
  Rational max_displacement;
};

/// Deterministic generic perturbation within max-norm epsilon. Halves the
/// scale until the result is generic; throws PerturbationFailedError after
/// `attempt_limit` halvings.
Perturbation generic_perturbation(const TypeSpace& types, const Rational& epsilon,
                                  int attempt_limit = 64);

struct ConvergenceStep {
  Rational epsilon;
  Perturbation perturbation;
  std::vector<Polytrope> perturbed_cells;
  /// For each basic cell of the original types: nearest perturbed cell
  /// (ties broken by closure order) and its Hausdorff distance.
  std::vector<std::size_t> matched;
  std::vector<HausdorffDistance> distances;
  bool within_envelope = true;
};

struct ConvergenceReport {
  std::vector<Polytrope> cells;
  std::vector<ConvergenceStep> steps;
  Rational envelope_constant;
  /// Every distance at most envelope_constant * epsilon.
  bool within_envelope = true;
  /// Per cell, distances never grow from one step to the next.
  bool non_increasing = true;
};

/// m = 3 only. `envelope_constant` defaults to 4 * m.
ConvergenceReport convergence_harness(const TypeSpace& types, std::span<const Rational> epsilons,
                                      std::optional<Rational> envelope_constant = std::nullopt,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

struct ReFailure {
  std::size_t cell_index;
  Polytrope cell;
  Point point;
  std::vector<std::vector<std::size_t>> components;
};

struct ReVerdict {
  bool revenue_equivalent = true;
  /// First basic cell whose interior point has a graph that is not strongly
  /// connected.
  std::optional<ReFailure> failure;
};

/// Revenue equivalence of the whole type space: the graph of the interior
/// point of every basic cell is strongly connected. Cross-checked cell by cell
/// against payment-set dimension 0; disagreement throws CrossCheckViolation.
ReVerdict is_re_type_space(const TypeSpace& types, std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace tropmech
