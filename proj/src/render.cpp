#include "gsrm/render.hpp"

#include <cstdio>
#include <stdexcept>

namespace gsrm {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

void RenderStyle::validate() const {
  if (!(pixels > 0.0) || !(vertex_radius > 0.0) || !(edge_width > 0.0) || !(path_width > 0.0))
    throw std::invalid_argument("render style dimensions must be positive");
}

std::string render_svg(const OccupancyGrid& grid, const Roadmap& roadmap, const RenderPath* path,
                       const RenderStyle& style) {
  style.validate();
  const double k = style.pixels;
  const double cell = k / grid.scale();
  const double w = grid.width() * cell;
  const double h = grid.height() * cell;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"" + style.background +
         "\" class=\"background\"/>\n";

  out += "<g fill=\"" + style.obstacle_fill + "\" shape-rendering=\"crispEdges\">\n";
  for (int y = 0; y < grid.height(); ++y) {
    int x = 0;
    while (x < grid.width()) {
      if (grid.is_free(x, y)) {
        ++x;
        continue;
      }
      const int x0 = x;
      while (x < grid.width() && !grid.is_free(x, y)) ++x;
      out += "<rect x=\"" + num(x0 * cell) + "\" y=\"" + num(y * cell) + "\" width=\"" + num((x - x0) * cell) +
             "\" height=\"" + num(cell) + "\"/>\n";
    }
  }
  out += "</g>\n";

  const auto& v = roadmap.vertices();
  out += "<g stroke=\"" + style.edge_color + "\" stroke-width=\"" + num(style.edge_width) + "\">\n";
  for (const auto& [a, b] : roadmap.edges()) {
    out += "<line x1=\"" + num(v[a].x * k) + "\" y1=\"" + num(v[a].y * k) + "\" x2=\"" + num(v[b].x * k) +
           "\" y2=\"" + num(v[b].y * k) + "\"/>\n";
  }
  out += "</g>\n";

  if (path) {
    out += "<polyline fill=\"none\" stroke=\"" + style.path_color + "\" stroke-width=\"" + num(style.path_width) +
           "\" points=\"";
    const auto add = [&](const Point& p, bool first) {
      if (!first) out += ' ';
      out += num(p.x * k) + "," + num(p.y * k);
    };
    add(path->start, true);
    for (int i : path->vertices) add(v.at(static_cast<std::size_t>(i)), false);
    add(path->goal, false);
    out += "\"/>\n";
  }

  out += "<g fill=\"" + style.vertex_color + "\">\n";
  for (const auto& p : v) {
    out += "<circle cx=\"" + num(p.x * k) + "\" cy=\"" + num(p.y * k) + "\" r=\"" + num(style.vertex_radius) +
           "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace gsrm
