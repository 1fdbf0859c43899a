#pragma once

// Exact min-plus linear algebra on finite square matrices: products, the
// minimum cycle mean (the unique min-plus eigenvalue), Kleene closure,
// critical graphs and strongly connected components.

#include <cstddef>
#include <span>
#include <vector>

#include "tropmech/rational.hpp"

namespace tropmech {

/// m x m matrix of finite rationals, m >= 2, stored row-major.
class SquareMatrix {
 public:
  /// All-zero matrix.
  explicit SquareMatrix(std::size_t m);
  SquareMatrix(std::size_t m, std::vector<Rational> row_major);
  static SquareMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t size() const { return m_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * m_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * m_ + j]; }
  std::span<const Rational> entries() const { return entries_; }

  bool has_zero_diagonal() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
  /// Lexicographic on row-major entries; the canonical key for sorting.
  friend std::strong_ordering operator<=>(const SquareMatrix& a, const SquareMatrix& b);

 private:
  std::size_t m_;
  std::vector<Rational> entries_;
};

/// Directed graph on nodes 0..m-1 without duplicate edges.
class DiGraph {
 public:
  explicit DiGraph(std::size_t m) : m_(m), adj_(m * m, 0) {}

  std::size_t size() const { return m_; }
  void add_edge(std::size_t from, std::size_t to);
  bool has_edge(std::size_t from, std::size_t to) const { return adj_[from * m_ + to] != 0; }
  std::size_t edge_count() const;

  friend bool operator==(const DiGraph&, const DiGraph&) = default;

 private:
  std::size_t m_;
  std::vector<char> adj_;
};

/// (A ⊙ x)_i = min_j A_ij + x_j.
std::vector<Rational> min_plus_matvec(const SquareMatrix& a, std::span<const Rational> x);

/// (A ⊙ B)_ij = min_k A_ik + B_kj.
SquareMatrix min_plus_product(const SquareMatrix& a, const SquareMatrix& b);

/// Minimum over all directed cycles of weight / length, by Karp's recurrence.
/// This is the unique min-plus eigenvalue of `a`.
Rational min_cycle_mean(const SquareMatrix& a);

/// Some cycle of negative total weight, or empty if none exists.
/// Bellman-Ford from a virtual source; the witness starts at its smallest node.
std::vector<std::size_t> find_negative_cycle(const SquareMatrix& a);

/// Shortest-path closure by Floyd-Warshall. Requires a zero diagonal; throws
/// NegativeCycleError when some cycle has negative weight.
SquareMatrix kleene_star(const SquareMatrix& a);

/// Edge (i,j) iff A*_ij + A*_ji = 0, i.e. the constraint p_i - p_j <= A*_ij
/// is tight on the whole solution set. Self-loops are always present.
DiGraph critical_graph(const SquareMatrix& a);

/// Components sorted by smallest member, members ascending.
std::vector<std::vector<std::size_t>> strongly_connected_components(const DiGraph& g);

}  // namespace tropmech
