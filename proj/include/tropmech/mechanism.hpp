#pragma once

// Single-agent mechanisms on a finite multiset of types.
//
// Sectors of a zero-diagonal matrix L: sector j is {t : t_j - t_k >= L_jk for
// all k}, the max-plus sector of index j with apex at row j of L. Every type
// assigned outcome j by g lies in sector j of its own allocation matrix.
//
// Realizability on a finite type space. Write I_jk for the types in sector j
// with t_j - t_k = L_jk. A limiting witness sequence in the open sector j can
// only approach the tight face by eventually lying on it, which contradicts
// openness once T is finite; witnesses never exist, so an equal singleton
// I_jk = I_kj = {s} rules realization out. These separation conditions are
// necessary but not sufficient: one type can be the only cover of two tight
// faces that need different outcomes. `separates` reports the conditions and
// `is_realizable` decides exactly with the same search `realize` runs.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropmech/polytrope.hpp"
#include "tropmech/tropical.hpp"

namespace tropmech {

/// Ordered list of r points of TP^{m-1}; equal points are distinct copies.
class TypeSpace {
 public:
  TypeSpace(std::size_t m, std::vector<Point> entries);

  std::size_t outcomes() const { return m_; }
  std::size_t size() const { return entries_.size(); }
  const Point& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Point>& entries() const { return entries_; }

 private:
  std::size_t m_;
  std::vector<Point> entries_;
};

/// Surjective map from type-space entries to outcomes 0..m-1.
class OutcomeFunction {
 public:
  /// Throws UsageError for out-of-range or non-surjective assignments.
  OutcomeFunction(std::vector<std::size_t> assignment, std::size_t m);

  std::size_t outcomes() const { return m_; }
  std::size_t size() const { return assignment_.size(); }
  std::size_t operator[](std::size_t entry) const { return assignment_[entry]; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  friend bool operator==(const OutcomeFunction&, const OutcomeFunction&) = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t m_;
};

struct SectorMembership {
  enum class Kind { Interior, Boundary, Outside };
  Kind kind = Kind::Outside;
  /// For Boundary: the k != j whose tight face t_j - t_k = L_jk contains t.
  std::vector<std::size_t> tight;

  friend bool operator==(const SectorMembership&, const SectorMembership&) = default;
};

/// L_jk = min over entries t with g(t) = j of t_j - t_k.
SquareMatrix allocation_matrix(const TypeSpace& types, const OutcomeFunction& g);

/// Rochet: g is IC iff the min-plus eigenvalue of its allocation matrix is 0.
bool is_ic(const TypeSpace& types, const OutcomeFunction& g);

/// All IC payments of g. Throws NotIcError with a negative-cycle witness.
Polytrope ic_payments(const TypeSpace& types, const OutcomeFunction& g);

/// L + L^T entrywise nonnegative.
bool is_weakly_monotone(const SquareMatrix& l);
bool is_weakly_monotone(const TypeSpace& types, const OutcomeFunction& g);

SectorMembership sector_membership(const SquareMatrix& l, std::size_t j, const Point& t);

/// Outcome of the finite separation test; `reason` names the first failure.
struct SeparationReport {
  bool separates = false;
  std::string reason;
};

SeparationReport separates(const SquareMatrix& l, const TypeSpace& types);

/// True iff some outcome function g has allocation_matrix(types, g) == l.
bool is_realizable(const SquareMatrix& l, const TypeSpace& types);

/// A realizing outcome function, found by lexicographic backtracking over
/// boundary assignments (entry index first, then outcome index).
std::optional<OutcomeFunction> try_realize(const SquareMatrix& l, const TypeSpace& types);
/// As try_realize; throws NotRealizableError instead of returning nullopt.
OutcomeFunction realize(const SquareMatrix& l, const TypeSpace& types);

/// Edge (i,j), i != j, iff some entry lies in both max-plus sectors i and j of
/// the hyperplane with apex p. All self-loops are present.
DiGraph graph_of_p(const TypeSpace& types, const Point& p);

/// IC with a payment set that is a single point of TP^{m-1}.
bool is_revenue_equivalent_mechanism(const TypeSpace& types, const OutcomeFunction& g);

struct BoundarySlack {
  /// slack(i,j) = L_ij - (p_i - p_j) >= 0
  SquareMatrix slack;
  /// Edge (i,j) iff some t with g(t) = i lies in max-plus sectors i and j at p.
  DiGraph tight;
};

/// Slack of every payment constraint at p, checked against the tight-face
/// graph. Throws UsageError when p is not an IC payment of g and
/// CrossCheckViolation if zero slack and tight faces ever disagree.
BoundarySlack boundary_slack(const TypeSpace& types, const OutcomeFunction& g, const Point& p);

}  // namespace tropmech
