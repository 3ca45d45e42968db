#pragma once

#include <fstream>

#include "fictplay/projection.hpp"

namespace fictplay {

// Diagnostic SVG output (not golden-tested): a simplex with colored
// best-response regions and indifference segments, and the projected square
// with its cells, per-cell drift arrows and equilibrium images.
namespace svg {

inline const char* region_color(int idx) {
  static const char* colors[4] = {"#e4707055", "#70a8e455", "#7ccf7c55", "#d0b04455"};
  return colors[idx % 4];
}

inline std::pair<double, double> bary_to_xy(const std::vector<double>& w, double scale) {
  // equilateral embedding: e1 bottom-left, e2 bottom-right, e3 top
  double x = w[1] + w[2] * 0.5;
  double y = w[2] * 0.8660254037844386;
  return {60 + scale * x, 60 + scale * (1 - y)};
}

template <class T>
void write_simplex(std::ostream& os, const BimatrixGame<T>& g, Player region_player) {
  double scale = 420;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='540' height='540'>\n";
  auto polys = best_response_polygons(g, region_player);
  for (auto& reg : polys) {
    if (reg.vertices.size() < 3) continue;
    os << "<polygon points='";
    for (auto& v : reg.vertices) {
      std::vector<double> w;
      for (auto& c : v) w.push_back(to_double(c));
      auto [x, y] = bary_to_xy(w, scale);
      os << x << "," << y << " ";
    }
    os << "' fill='" << region_color(reg.action) << "' stroke='none'/>\n";
  }
  for (auto& seg : indifferent_lines(g, region_player)) {
    std::vector<double> a, b;
    for (auto& c : seg.p0) a.push_back(to_double(c));
    for (auto& c : seg.p1) b.push_back(to_double(c));
    auto [x0, y0] = bary_to_xy(a, scale);
    auto [x1, y1] = bary_to_xy(b, scale);
    os << "<line x1='" << x0 << "' y1='" << y0 << "' x2='" << x1 << "' y2='" << y1
       << "' stroke='#2040c0' stroke-width='2'/>\n";
  }
  const char* labels[3] = {"e1", "e2", "e3"};
  for (int v = 0; v < 3; ++v) {
    std::vector<double> w = {v == 0 ? 1.0 : 0.0, v == 1 ? 1.0 : 0.0, v == 2 ? 1.0 : 0.0};
    auto [x, y] = bary_to_xy(w, scale);
    os << "<text x='" << x << "' y='" << y << "' font-size='14'>" << labels[v] << "</text>\n";
  }
  os << "</svg>\n";
}

template <class T>
void write_square(std::ostream& os, const ProjectedSquare<T>& sqt,
                  const std::vector<std::pair<double, double>>& ne_images = {}) {
  ProjectedSquare<double> sq = to_double_square(sqt);
  double scale = 420, off = 60;
  auto X = [&](double v) { return off + scale * v; };
  auto Y = [&](double v) { return off + scale * (1 - v); };
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='540' height='540'>\n";
  for (auto& cell : sq.cells) {
    os << "<rect x='" << X(cell.x0) << "' y='" << Y(cell.y1) << "' width='"
       << scale * (cell.x1 - cell.x0) << "' height='" << scale * (cell.y1 - cell.y0)
       << "' fill='" << region_color(cell.b_action) << "' stroke='#444'/>\n";
    double cx = (cell.x0 + cell.x1) / 2, cy = (cell.y0 + cell.y1) / 2;
    double dx = cell.tx - cx, dy = cell.ty - cy;
    double len = std::sqrt(dx * dx + dy * dy);
    if (len > 1e-12) {
      double ax = cx + 0.35 * (cell.x1 - cell.x0) * dx / len;
      double ay = cy + 0.35 * (cell.y1 - cell.y0) * dy / len;
      os << "<line x1='" << X(cx) << "' y1='" << Y(cy) << "' x2='" << X(ax) << "' y2='"
         << Y(ay) << "' stroke='#103050' stroke-width='2'/>\n";
      os << "<circle cx='" << X(ax) << "' cy='" << Y(ay) << "' r='3' fill='#103050'/>\n";
    }
    static const char* names[9] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"};
    os << "<text x='" << X(cell.x0) + 6 << "' y='" << Y(cell.y1) + 16 << "' font-size='13'>"
       << names[cell.label] << "</text>\n";
  }
  for (auto& [px, py] : ne_images)
    os << "<circle cx='" << X(px) << "' cy='" << Y(py) << "' r='5' fill='#c01020'/>\n";
  os << "</svg>\n";
}

}  // namespace svg
}  // namespace fictplay
