#include "svg.hpp"

#include <map>
#include <sstream>

#include "tropmech/errors.hpp"

namespace tropmech::svg {

namespace {

constexpr long kCanvas = 600;
constexpr int kDigits = 2;

struct Direction {
  int dx;
  int dy;
};

// Rays of the min-plus tree: between sectors 1|2, 1|3 and 2|3.
constexpr std::array<Direction, 3> kMinPlusRays{{{0, 1}, {1, 0}, {-1, -1}}};
constexpr std::array<Direction, 3> kMaxPlusRays{{{0, -1}, {-1, 0}, {1, 1}}};

Planar planar(const Point& p) { return {p[1], p[2]}; }

// Liang-Barsky on the closed ray apex + s * dir, s >= 0. Empty when the ray
// misses the box or only grazes it in a single point.
std::optional<Segment> clip_ray(const Planar& apex, Direction dir, const Box& box) {
  Rational lo(0);
  std::optional<Rational> hi;
  auto axis = [&](const Rational& a, int d, const Rational& mn, const Rational& mx) {
    if (d == 0) return mn <= a && a <= mx;
    const Rational step(d);
    Rational s_mn = (mn - a) / step;
    Rational s_mx = (mx - a) / step;
    if (d < 0) std::swap(s_mn, s_mx);
    lo = max(lo, s_mn);
    hi = hi ? min(*hi, s_mx) : s_mx;
    return true;
  };
  if (!axis(apex.x, dir.dx, box.min_x, box.max_x)) return std::nullopt;
  if (!axis(apex.y, dir.dy, box.min_y, box.max_y)) return std::nullopt;
  if (!hi || !(lo < *hi)) return std::nullopt;
  auto at = [&](const Rational& s) {
    return Planar{apex.x + s * Rational(dir.dx), apex.y + s * Rational(dir.dy)};
  };
  return Segment{at(lo), at(*hi)};
}

template <std::size_t N>
Tree make_tree(const Planar& apex, const std::array<Direction, 3>& rays,
               const std::array<SectorLabel, N>& labels, const Box& box, const Rational& gap) {
  Tree tree{apex, {}, {}};
  for (Direction d : rays) {
    if (auto s = clip_ray(apex, d, box)) tree.rays.push_back(*s);
  }
  for (const SectorLabel& l : labels) {
    tree.labels.emplace_back(Planar{apex.x + gap * Rational(l.dx), apex.y + gap * Rational(l.dy)},
                             l.sector);
  }
  return tree;
}

Box viewport(const std::vector<Planar>& pts) {
  if (pts.empty()) return {Rational(-1), Rational(-1), Rational(1), Rational(1)};
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Planar& p : pts) {
    b.min_x = min(b.min_x, p.x);
    b.min_y = min(b.min_y, p.y);
    b.max_x = max(b.max_x, p.x);
    b.max_y = max(b.max_y, p.y);
  }
  Rational side = max(b.max_x - b.min_x, b.max_y - b.min_y);
  if (side.is_zero()) side = Rational(4);
  const Rational pad = side / Rational(4);
  b.min_x -= pad;
  b.min_y -= pad;
  b.max_x += pad;
  b.max_y += pad;
  return b;
}

Rational larger_side(const Box& b) { return max(b.max_x - b.min_x, b.max_y - b.min_y); }

class Canvas {
 public:
  explicit Canvas(const Box& box) : box_(box), scale_(Rational(kCanvas) / larger_side(box)) {}

  std::string x(const Rational& v) const { return ((v - box_.min_x) * scale_).to_fixed(kDigits); }
  std::string y(const Rational& v) const { return ((box_.max_y - v) * scale_).to_fixed(kDigits); }
  std::string width() const { return ((box_.max_x - box_.min_x) * scale_).to_fixed(kDigits); }
  std::string height() const { return ((box_.max_y - box_.min_y) * scale_).to_fixed(kDigits); }

  std::string points(const std::vector<Planar>& pts) const {
    std::string s;
    for (const Planar& p : pts) {
      if (!s.empty()) s += ' ';
      s += x(p.x) + ',' + y(p.y);
    }
    return s;
  }

  std::string line(const Segment& s, std::string_view indent) const {
    return std::string(indent) + "<line x1=\"" + x(s.from.x) + "\" y1=\"" + y(s.from.y) + "\" x2=\"" +
           x(s.to.x) + "\" y2=\"" + y(s.to.y) + "\"/>\n";
  }

 private:
  Box box_;
  Rational scale_;
};

void emit_tree(std::ostringstream& os, const Canvas& c, const Tree& t, std::string_view cls) {
  os << "    <g class=\"" << cls << "\">\n";
  for (const Segment& s : t.rays) os << c.line(s, "      ");
  os << "    </g>\n";
}

void emit_labels(std::ostringstream& os, const Canvas& c, const Tree& t, std::string_view cls) {
  for (const auto& [at, sector] : t.labels) {
    os << "    <text class=\"" << cls << "\" x=\"" << c.x(at.x) << "\" y=\"" << c.y(at.y) << "\">"
       << sector << "</text>\n";
  }
}

nlohmann::ordered_json planar_json(const Planar& p) { return nlohmann::ordered_json::array({p.x.str(), p.y.str()}); }

nlohmann::ordered_json segment_json(const Segment& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  j["from"] = planar_json(s.from);
  j["to"] = planar_json(s.to);
  return j;
}

nlohmann::ordered_json tree_json(const Tree& t) {
  nlohmann::ordered_json rays = nlohmann::ordered_json::array();
  for (const Segment& s : t.rays) rays.push_back(segment_json(s));
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (const auto& [at, sector] : t.labels) labels.push_back({{"sector", sector}, {"at", planar_json(at)}});
  return {{"apex", planar_json(t.apex)}, {"rays", rays}, {"labels", labels}};
}

}  // namespace

Scene build_scene(const TypeSpace& types, const std::vector<Polytrope>& cells,
                  const std::optional<Point>& payment) {
  if (types.outcomes() != 3) throw DimensionUnsupportedError("rendering requires m = 3");
  if (payment && payment->size() != 3) throw UsageError("payment must have 3 coordinates");

  Scene scene;
  std::vector<Planar> extent;
  // Coincident entries share one apex, drawn in first-appearance order.
  std::map<std::pair<Rational, Rational>, std::string> apex_labels;
  std::vector<Planar> apex_order;
  for (std::size_t e = 0; e < types.size(); ++e) {
    const Planar p = planar(types[e]);
    auto [it, fresh] = apex_labels.try_emplace({p.x, p.y}, "");
    if (fresh) {
      apex_order.push_back(p);
    } else {
      it->second += ',';
    }
    it->second += "t" + std::to_string(e + 1);
    extent.push_back(p);
  }
  for (const Polytrope& cell : cells) {
    Cell c{cell.dimension(), planar_polygon(cell)};
    extent.insert(extent.end(), c.vertices.begin(), c.vertices.end());
    scene.cells.push_back(std::move(c));
  }
  if (payment) extent.push_back(planar(*payment));

  scene.viewport = viewport(extent);
  const Box& box = scene.viewport;
  const Rational gap = larger_side(box) / Rational(24);

  if (box.min_y <= Rational(0) && Rational(0) <= box.max_y) {
    scene.axes.push_back({{box.min_x, Rational(0)}, {box.max_x, Rational(0)}});
  }
  if (box.min_x <= Rational(0) && Rational(0) <= box.max_x) {
    scene.axes.push_back({{Rational(0), box.min_y}, {Rational(0), box.max_y}});
  }
  for (const Planar& p : apex_order) {
    scene.min_plus.push_back(make_tree(p, kMinPlusRays, kMinPlusLabels, box, gap));
    scene.apices.push_back({p, apex_labels.at({p.x, p.y})});
  }
  if (payment) scene.max_plus = make_tree(planar(*payment), kMaxPlusRays, kMaxPlusLabels, box, gap);
  return scene;
}

std::string to_svg(const Scene& scene) {
  const Canvas c(scene.viewport);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << c.width() << "\" height=\""
     << c.height() << "\" viewBox=\"0 0 " << c.width() << ' ' << c.height() << "\">\n"
     << "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" << c.width() << "\" height=\"" << c.height()
     << "\" fill=\"white\"/>\n";

  os << "  <g class=\"axes\" stroke=\"#b0b0b0\" stroke-width=\"0.75\">\n";
  for (const Segment& s : scene.axes) os << c.line(s, "    ");
  os << "  </g>\n";

  os << "  <g class=\"cells\">\n";
  for (const Cell& cell : scene.cells) {
    if (cell.dimension == 2) {
      os << "    <polygon class=\"basic-cell\" points=\"" << c.points(cell.vertices)
         << "\" fill=\"#c8c8c8\" stroke=\"none\"/>\n";
    } else if (cell.dimension == 1) {
      os << "    <polyline class=\"basic-cell-segment\" points=\"" << c.points(cell.vertices)
         << "\" fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"5\"/>\n";
    } else {
      const Planar& p = cell.vertices.front();
      os << "    <circle class=\"basic-cell-point\" cx=\"" << c.x(p.x) << "\" cy=\"" << c.y(p.y)
         << "\" r=\"5\" fill=\"#c8c8c8\"/>\n";
    }
  }
  os << "  </g>\n";

  os << "  <g class=\"min-plus\" stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";
  for (const Tree& t : scene.min_plus) emit_tree(os, c, t, "hyperplane");
  os << "  </g>\n";

  if (scene.max_plus) {
    os << "  <g class=\"max-plus\" stroke=\"#2b5797\" stroke-width=\"1.5\" stroke-dasharray=\"2 4\" "
          "fill=\"none\">\n";
    emit_tree(os, c, *scene.max_plus, "hyperplane");
    os << "  </g>\n";
  }

  os << "  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n";
  for (const Tree& t : scene.min_plus) emit_labels(os, c, t, "sector-label min-plus-label");
  if (scene.max_plus) emit_labels(os, c, *scene.max_plus, "sector-label max-plus-label");
  os << "  </g>\n";

  os << "  <g class=\"apices\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (const Apex& a : scene.apices) {
    os << "    <circle class=\"apex\" cx=\"" << c.x(a.at.x) << "\" cy=\"" << c.y(a.at.y)
       << "\" r=\"3\" fill=\"black\"/>\n"
       << "    <text class=\"apex-label\" x=\"" << c.x(a.at.x) << "\" y=\"" << c.y(a.at.y)
       << "\" dx=\"5\" dy=\"-5\">" << a.label << "</text>\n";
  }
  os << "  </g>\n";
  os << "</svg>\n";
  return os.str();
}

nlohmann::ordered_json to_json(const Scene& scene) {
  const Box& b = scene.viewport;
  nlohmann::ordered_json j;
  j["viewport"] = {{"min", planar_json({b.min_x, b.min_y})}, {"max", planar_json({b.max_x, b.max_y})}};
  j["axes"] = nlohmann::ordered_json::array();
  for (const Segment& s : scene.axes) j["axes"].push_back(segment_json(s));
  j["cells"] = nlohmann::ordered_json::array();
  for (const Cell& cell : scene.cells) {
    nlohmann::ordered_json v = nlohmann::ordered_json::array();
    for (const Planar& p : cell.vertices) v.push_back(planar_json(p));
    j["cells"].push_back({{"dimension", cell.dimension}, {"vertices", v}});
  }
  j["min_plus"] = nlohmann::ordered_json::array();
  for (const Tree& t : scene.min_plus) j["min_plus"].push_back(tree_json(t));
  if (scene.max_plus) j["max_plus"] = tree_json(*scene.max_plus);
  j["apices"] = nlohmann::ordered_json::array();
  for (const Apex& a : scene.apices) j["apices"].push_back({{"at", planar_json(a.at)}, {"label", a.label}});
  return j;
}

}  // namespace tropmech::svg
