#include "tropmech/polytrope.hpp"

#include <algorithm>
#include <cmath>

#include "tropmech/errors.hpp"

namespace tropmech {

Point::Point(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw UsageError("point must have at least one coordinate");
  const Rational offset = coords_.front();
  if (!offset.is_zero()) {
    for (auto& c : coords_) c -= offset;
  }
}

Polytrope Polytrope::from_constraints(const SquareMatrix& constraints) {
  return Polytrope(kleene_star(constraints));
}

Polytrope Polytrope::from_point(const Point& p) {
  const std::size_t m = p.size();
  SquareMatrix c(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) c(i, j) = p[i] - p[j];
  }
  return Polytrope(std::move(c));
}

bool Polytrope::contains(const Point& p) const {
  const std::size_t m = ambient();
  if (p.size() != m) throw UsageError("contains: dimension mismatch");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && closure_(i, j) < p[i] - p[j]) return false;
    }
  }
  return true;
}

std::vector<Point> Polytrope::tropical_vertices() const {
  const std::size_t m = ambient();
  std::vector<Point> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> column(m);
    for (std::size_t i = 0; i < m; ++i) column[i] = closure_(i, j);
    out.emplace_back(std::move(column));
  }
  return out;
}

Point Polytrope::interior_point() const {
  const std::size_t m = ambient();
  std::vector<Rational> sum(m);
  for (const Point& v : tropical_vertices()) {
    for (std::size_t i = 0; i < m; ++i) sum[i] += v[i];
  }
  const Rational count(m);
  for (auto& s : sum) s /= count;
  return Point(std::move(sum));
}

std::size_t Polytrope::dimension() const {
  return strongly_connected_components(critical_graph()).size() - 1;
}

namespace {

void require_plane(const Polytrope& p) {
  if (p.ambient() != 3) {
    throw DimensionUnsupportedError("planar geometry needs m = 3, got m = " +
                                    std::to_string(p.ambient()));
  }
}

Rational cross(const Planar& o, const Planar& a, const Planar& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; drops duplicate and collinear points.
std::vector<Planar> convex_hull(std::vector<Planar> pts) {
  std::sort(pts.begin(), pts.end(), [](const Planar& a, const Planar& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Planar> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p).sign() <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Half-plane a.x * x + a.y * y <= c
struct HalfPlane {
  Rational a;
  Rational b;
  Rational c;
};

std::vector<HalfPlane> half_planes(const Polytrope& p) {
  // coordinate 0 is pinned to zero; coordinates 1 and 2 are x and y
  const auto& c = p.closure();
  std::vector<HalfPlane> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      Rational a, b;
      if (i == 1) a += 1;
      if (i == 2) b += 1;
      if (j == 1) a -= 1;
      if (j == 2) b -= 1;
      out.push_back({a, b, c(i, j)});
    }
  }
  return out;
}

bool inside(const std::vector<HalfPlane>& hs, const Planar& q) {
  return std::all_of(hs.begin(), hs.end(),
                     [&](const HalfPlane& h) { return h.a * q.x + h.b * q.y <= h.c; });
}

Rational squared_norm(const Rational& dx, const Rational& dy) { return dx * dx + dy * dy; }

Rational squared_distance_to_segment(const Planar& q, const Planar& a, const Planar& b) {
  const Rational dx = b.x - a.x;
  const Rational dy = b.y - a.y;
  const Rational len2 = squared_norm(dx, dy);
  if (len2.is_zero()) return squared_norm(q.x - a.x, q.y - a.y);
  Rational t = ((q.x - a.x) * dx + (q.y - a.y) * dy) / len2;
  if (t.sign() < 0) t = 0;
  if (Rational(1) < t) t = 1;
  return squared_norm(q.x - (a.x + t * dx), q.y - (a.y + t * dy));
}

Rational squared_distance_to_polygon(const Planar& q, const std::vector<Planar>& polygon,
                                     const std::vector<HalfPlane>& hs) {
  if (inside(hs, q)) return Rational(0);
  if (polygon.size() == 1) return squared_norm(q.x - polygon[0].x, q.y - polygon[0].y);
  Rational best = squared_distance_to_segment(q, polygon[0], polygon[1]);
  for (std::size_t i = 1; i < polygon.size(); ++i) {
    const Planar& a = polygon[i];
    const Planar& b = polygon[(i + 1) % polygon.size()];
    best = min(best, squared_distance_to_segment(q, a, b));
  }
  return best;
}

// Directed Hausdorff distance: d(., B) is convex, so its maximum over A is
// attained at a vertex of A.
Rational directed_squared(const std::vector<Planar>& from, const std::vector<Planar>& to,
                          const std::vector<HalfPlane>& to_planes) {
  Rational worst;
  for (const auto& v : from) worst = max(worst, squared_distance_to_polygon(v, to, to_planes));
  return worst;
}

}  // namespace

std::vector<Planar> planar_polygon(const Polytrope& p) {
  require_plane(p);
  const auto hs = half_planes(p);
  std::vector<Planar> candidates;
  for (std::size_t u = 0; u < hs.size(); ++u) {
    for (std::size_t v = u + 1; v < hs.size(); ++v) {
      const Rational det = hs[u].a * hs[v].b - hs[u].b * hs[v].a;
      if (det.is_zero()) continue;
      Planar q{(hs[u].c * hs[v].b - hs[u].b * hs[v].c) / det,
               (hs[u].a * hs[v].c - hs[u].c * hs[v].a) / det};
      if (inside(hs, q)) candidates.push_back(std::move(q));
    }
  }
  return convex_hull(std::move(candidates));
}

HausdorffDistance hausdorff_distance_2d(const Polytrope& a, const Polytrope& b) {
  require_plane(a);
  require_plane(b);
  const auto pa = planar_polygon(a);
  const auto pb = planar_polygon(b);
  const Rational squared =
      max(directed_squared(pa, pb, half_planes(b)), directed_squared(pb, pa, half_planes(a)));

  const double estimate = std::sqrt(squared.to_double());
  double lower = estimate;
  while (lower > 0.0 && squared < Rational::from_double(lower) * Rational::from_double(lower)) {
    lower = std::nextafter(lower, 0.0);
  }
  double upper = estimate;
  while (Rational::from_double(upper) * Rational::from_double(upper) < squared) {
    upper = std::nextafter(upper, HUGE_VAL);
  }
  return {squared, lower, upper};
}

}  // namespace tropmech
