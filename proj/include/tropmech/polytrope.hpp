#pragma once

// Polytropes: solution sets {p : p_i - p_j <= A_ij} in tropical affine space,
// kept in canonical form as their shortest-path closure.

#include <cstddef>
#include <span>
#include <vector>

#include "tropmech/rational.hpp"
#include "tropmech/tropical.hpp"

namespace tropmech {

/// A point of TP^{m-1}, represented with first coordinate exactly zero.
class Point {
 public:
  /// Normalizes any representative by subtracting its first coordinate.
  explicit Point(std::vector<Rational> coords);

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Rational> coords_;
};

/// Planar coordinates (p_2 - p_1, p_3 - p_1) of a point of TP^2.
struct Planar {
  Rational x;
  Rational y;
  friend bool operator==(const Planar&, const Planar&) = default;
};

class Polytrope {
 public:
  /// {p : p_i - p_j <= L_ij} for zero-diagonal L. Throws NegativeCycleError
  /// exactly when the set is empty.
  static Polytrope from_constraints(const SquareMatrix& constraints);
  /// The single-point polytrope {p}.
  static Polytrope from_point(const Point& p);

  std::size_t ambient() const { return closure_.size(); }
  const SquareMatrix& closure() const { return closure_; }

  bool contains(const Point& p) const;
  /// Normalized closure columns, in column order.
  std::vector<Point> tropical_vertices() const;
  /// Average of the normalized closure columns. Satisfies every critical
  /// constraint with equality and every other one strictly.
  Point interior_point() const;
  DiGraph critical_graph() const { return tropmech::critical_graph(closure_); }
  /// (number of strongly connected components of the critical graph) - 1.
  std::size_t dimension() const;

  /// Closed matrices are in bijection with nonempty polytropes.
  friend bool operator==(const Polytrope&, const Polytrope&) = default;
  friend std::strong_ordering operator<=>(const Polytrope& a, const Polytrope& b) {
    return a.closure_ <=> b.closure_;
  }

 private:
  explicit Polytrope(SquareMatrix closure) : closure_(std::move(closure)) {}
  SquareMatrix closure_;
};

inline bool equals(const Polytrope& a, const Polytrope& b) { return a == b; }

/// Vertices of a polytrope in TP^2 as a classical convex polygon in planar
/// coordinates, counter-clockwise. One vertex for a point, two for a segment.
/// Throws DimensionUnsupportedError unless ambient() == 3.
std::vector<Planar> planar_polygon(const Polytrope& p);

/// Euclidean Hausdorff distance in planar coordinates. The squared distance is
/// exact; [lower, upper] is a certified enclosure of the distance itself.
struct HausdorffDistance {
  Rational squared;
  double lower = 0.0;
  double upper = 0.0;

  /// Exact test distance <= bound (bound >= 0).
  bool at_most(const Rational& bound) const { return squared <= bound * bound; }
};

HausdorffDistance hausdorff_distance_2d(const Polytrope& a, const Polytrope& b);

}  // namespace tropmech
