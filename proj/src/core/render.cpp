#include "core/render.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace geocoil {

namespace {

constexpr double kUnitTol = 1e-9;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return std::string(buf);
}

/// Sign of the canonical antipodal representative: +1 when p is kept, -1
/// when -p is the representative.
int fold_sign(const Vec3& p) {
  if (p[2] > 0.0) return 1;
  if (p[2] < 0.0) return -1;
  if (p[1] > 0.0) return 1;
  if (p[1] < 0.0) return -1;
  return p[0] >= 0.0 ? 1 : -1;
}

struct Canvas {
  double size;
  double radius;

  double px(double u) const { return size / 2.0 + radius * u; }
  double py(double v) const { return size / 2.0 - radius * v; }
};

std::string polyline_element(const Canvas& cv, const std::vector<DiskPoint>& pts,
                             const std::string& attrs) {
  std::string s = "  <polyline fill=\"none\" " + attrs + " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) s += ' ';
    s += fmt(cv.px(pts[i].u)) + ',' + fmt(cv.py(pts[i].v));
  }
  s += "\"/>\n";
  return s;
}

/// Splits a unit-sphere polyline into disk pieces, inserting a boundary exit
/// and the antipodal re-entry every time the curve crosses the equator.
std::vector<std::vector<DiskPoint>> disk_pieces(const std::vector<Vec3>& samples) {
  std::vector<std::vector<DiskPoint>> pieces;
  if (samples.empty()) return pieces;

  std::vector<DiskPoint> cur;
  int sign = fold_sign(samples.front());
  cur.push_back(to_disk(samples.front()));

  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Vec3& a = samples[i];
    const Vec3& b = samples[i + 1];
    const int sb = fold_sign(b);
    if (sb == sign) {
      cur.push_back(to_disk(b));
      continue;
    }
    // Equator crossing between a and b; chord interpolation is adequate for
    // densely sampled curves.
    const double za = a[2];
    const double zb = b[2];
    double t = 0.5;
    if (za != zb) t = za / (za - zb);
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    Vec3 c = normalized(a + (b - a) * t);
    DiskPoint exit{sign * c[0], sign * c[1], true};
    cur.push_back(exit);
    pieces.push_back(cur);
    cur.clear();
    cur.push_back(DiskPoint{-exit.u, -exit.v, true});
    cur.push_back(to_disk(b));
    sign = sb;
  }
  if (cur.size() >= 2) pieces.push_back(cur);
  return pieces;
}

std::string svg_open(const Canvas& cv) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(cv.size) +
       "\" height=\"" + fmt(cv.size) + "\" viewBox=\"0 0 " + fmt(cv.size) + " " +
       fmt(cv.size) + "\">\n";
  s += "  <rect width=\"" + fmt(cv.size) + "\" height=\"" + fmt(cv.size) +
       "\" fill=\"#ffffff\"/>\n";
  return s;
}

std::string boundary_circle(const Canvas& cv) {
  return "  <circle cx=\"" + fmt(cv.size / 2.0) + "\" cy=\"" + fmt(cv.size / 2.0) +
         "\" r=\"" + fmt(cv.radius) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
}

std::string focus_glyph(const Canvas& cv, const DiskPoint& p, double size) {
  return "  <circle class=\"focus\" cx=\"" + fmt(cv.px(p.u)) + "\" cy=\"" +
         fmt(cv.py(p.v)) + "\" r=\"" + fmt(size * 0.7) +
         "\" fill=\"#1f6fb4\" stroke=\"none\"/>\n";
}

std::string saddle_glyph(const Canvas& cv, const DiskPoint& p, double size) {
  const double x = cv.px(p.u);
  const double y = cv.py(p.v);
  const double d = size * 0.7;
  std::string s = "  <g class=\"saddle\" stroke=\"#c53030\" stroke-width=\"2.0\">\n";
  s += "    <line x1=\"" + fmt(x - d) + "\" y1=\"" + fmt(y - d) + "\" x2=\"" +
       fmt(x + d) + "\" y2=\"" + fmt(y + d) + "\"/>\n";
  s += "    <line x1=\"" + fmt(x - d) + "\" y1=\"" + fmt(y + d) + "\" x2=\"" +
       fmt(x + d) + "\" y2=\"" + fmt(y - d) + "\"/>\n";
  s += "  </g>\n";
  return s;
}

const char* type_fill(TopType t) {
  switch (t) {
    case TopType::I: return "#ffffff";
    case TopType::II: return "#9ecae1";
    case TopType::III: return "#fdae6b";
    case TopType::IV: return "#a1d99b";
    case TopType::Marginal: return "#bdbdbd";
  }
  return "#bdbdbd";
}

}  // namespace

DiskPoint to_disk(const Vec3& p) {
  const double n = norm(p);
  if (std::abs(n - 1.0) > kUnitTol)
    fail(Errc::InvalidArgument, "to_disk expects a unit vector");
  Vec3 q = p;
  if (fold_sign(p) < 0) q = -p;
  DiskPoint d{q[0], q[1], false};
  d.boundary = std::abs(d.u * d.u + d.v * d.v - 1.0) <= kUnitTol;
  return d;
}

std::string render_net_svg(const SeparatrixGraph& g,
                           const std::vector<std::vector<Vec3>>& overlays,
                           const RenderStyle& style) {
  const Canvas cv{style.canvas, style.radius};
  std::string s = svg_open(cv);
  s += boundary_circle(cv);

  const double ln = g.L_norm > 0.0 ? g.L_norm : 1.0;
  for (const GraphEdge& e : g.edges) {
    std::vector<Vec3> unit;
    unit.reserve(e.samples.size());
    for (const Vec3& p : e.samples) unit.push_back(p / ln);
    for (const auto& piece : disk_pieces(unit)) {
      s += polyline_element(cv, piece,
                            "class=\"edge\" stroke=\"#1a1a1a\" stroke-width=\"" +
                                fmt(style.edge_width) + "\"");
    }
  }

  for (const auto& overlay : overlays) {
    for (const auto& piece : disk_pieces(overlay)) {
      s += polyline_element(
          cv, piece,
          "class=\"overlay\" stroke=\"#555555\" stroke-width=\"" +
              fmt(style.overlay_width) + "\" stroke-dasharray=\"6 4\"");
    }
  }

  for (const GraphVertex& v : g.vertices) {
    const DiskPoint p = to_disk(v.L / ln);
    if (v.stability == Stability::Focus)
      s += focus_glyph(cv, p, style.glyph_size);
    else
      s += saddle_glyph(cv, p, style.glyph_size);
  }

  s += "</svg>\n";
  return s;
}

std::string render_region_map_svg(const RegionMap& map, const RenderStyle& style) {
  const Canvas cv{style.canvas, style.radius};
  const double cell = 2.0 / static_cast<double>(map.resolution) * style.radius;
  std::string s = svg_open(cv);

  s += "  <clipPath id=\"disk\"><circle cx=\"" + fmt(cv.size / 2.0) + "\" cy=\"" +
       fmt(cv.size / 2.0) + "\" r=\"" + fmt(cv.radius) + "\"/></clipPath>\n";
  s += "  <g clip-path=\"url(#disk)\" stroke=\"none\">\n";
  for (const RegionSample& rs : map.samples) {
    s += "    <rect x=\"" + fmt(cv.px(rs.u) - cell / 2.0) + "\" y=\"" +
         fmt(cv.py(rs.v) - cell / 2.0) + "\" width=\"" + fmt(cell) +
         "\" height=\"" + fmt(cell) + "\" fill=\"" +
         type_fill(rs.type) + "\"/>\n";
  }
  s += "  </g>\n";
  s += boundary_circle(cv);

  const TopType legend_types[5] = {TopType::I, TopType::II, TopType::III,
                                   TopType::IV, TopType::Marginal};
  for (int i = 0; i < 5; ++i) {
    const double y = 16.0 + 20.0 * i;
    s += "  <rect x=\"8.0000\" y=\"" + fmt(y) +
         "\" width=\"14.0000\" height=\"14.0000\" fill=\"" +
         type_fill(legend_types[i]) + "\" stroke=\"#000000\" stroke-width=\"0.8\"/>\n";
    s += "  <text x=\"28.0000\" y=\"" + fmt(y + 11.5) +
         "\" font-family=\"sans-serif\" font-size=\"13\">" +
         top_type_name(legend_types[i]) + "</text>\n";
  }

  s += "</svg>\n";
  return s;
}

std::string render_compare_svg(const std::vector<Vec3>& exact_normals,
                               const std::vector<Vec3>& averaged_track,
                               const RenderStyle& style) {
  const Canvas cv{style.canvas, style.radius};
  std::string s = svg_open(cv);
  s += boundary_circle(cv);

  for (const auto& piece : disk_pieces(averaged_track)) {
    s += polyline_element(cv, piece,
                          "class=\"averaged\" stroke=\"#c53030\" stroke-width=\"" +
                              fmt(style.overlay_width) +
                              "\" stroke-dasharray=\"6 4\"");
  }
  for (const auto& piece : disk_pieces(exact_normals)) {
    s += polyline_element(cv, piece,
                          "class=\"exact\" stroke=\"#1a1a1a\" stroke-width=\"" +
                              fmt(style.edge_width) + "\"");
  }
  for (const Vec3& n : exact_normals) {
    const DiskPoint p = to_disk(n);
    s += "  <circle class=\"mark\" cx=\"" + fmt(cv.px(p.u)) + "\" cy=\"" +
         fmt(cv.py(p.v)) + "\" r=\"2.2000\" fill=\"#1a1a1a\"/>\n";
  }

  s += "</svg>\n";
  return s;
}

}  // namespace geocoil
