#pragma once

// Drawing of TP^2 arrangements in planar coordinates x = p_2 - p_1,
// y = p_3 - p_1. All geometry stays exact until the final fixed-point print,
// so identical requests produce byte-identical documents.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tropmech/mechanism.hpp"
#include "tropmech/polytrope.hpp"

namespace tropmech::svg {

struct Box {
  Rational min_x, min_y, max_x, max_y;
};

struct Segment {
  Planar from;
  Planar to;
};

struct SectorLabel {
  int sector;
  int dx;
  int dy;
};

/// Label offsets, in units of the label distance, from the apex into the
/// interior of each sector. Min-plus: 1 upper-right, 2 left, 3 lower.
inline constexpr std::array<SectorLabel, 3> kMinPlusLabels{{{1, 1, 1}, {2, -1, 0}, {3, 0, -1}}};
/// Max-plus sectors are the point reflection of the min-plus ones.
inline constexpr std::array<SectorLabel, 3> kMaxPlusLabels{{{1, -1, -1}, {2, 1, 0}, {3, 0, 1}}};

struct Tree {
  Planar apex;
  /// Clipped rays; a ray missing the viewport is dropped.
  std::vector<Segment> rays;
  std::vector<std::pair<Planar, int>> labels;
};

struct Cell {
  std::size_t dimension;
  /// Counter-clockwise; one vertex for a point, two for a segment.
  std::vector<Planar> vertices;
};

struct Apex {
  Planar at;
  /// "t1", or "t1,t4" for coincident entries.
  std::string label;
};

struct Scene {
  Box viewport;
  std::vector<Segment> axes;
  std::vector<Cell> cells;
  std::vector<Tree> min_plus;
  std::optional<Tree> max_plus;
  std::vector<Apex> apices;
};

/// Requires types.outcomes() == 3 and every cell in TP^2; throws
/// DimensionUnsupportedError otherwise. The viewport is the bounding box of
/// the apices, the payment and the cell vertices, padded on every edge by a
/// quarter of its larger side so that side grows by 50%; [-1, 1]^2 when there
/// is nothing to draw.
Scene build_scene(const TypeSpace& types, const std::vector<Polytrope>& cells,
                  const std::optional<Point>& payment);

std::string to_svg(const Scene& scene);
nlohmann::ordered_json to_json(const Scene& scene);

}  // namespace tropmech::svg
