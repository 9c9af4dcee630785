#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace hyperdel::cli {

std::string svg_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  std::string out = buffer;
  return out == "-0" ? "0" : out;
}

std::string render_svg(const Hypertriangulation& h, const SvgOptions& options) {
  const PointSet& base = h.base();
  const auto vertices = h.vertices();
  if (vertices.empty()) throw GeometryError("nothing to draw");
  // Exact bounding box in position units, then one affine map to the canvas.
  Rational min_x = label_position(base, vertices[0]).x, max_x = min_x;
  Rational min_y = label_position(base, vertices[0]).y, max_y = min_y;
  for (const Label& v : vertices) {
    const Point p = label_position(base, v);
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const Rational span = std::max(Rational(max_x - min_x), Rational(max_y - min_y));
  const Rational margin = span / 20;
  const Rational scale = Rational(static_cast<long>(options.width)) / (span + 2 * margin);
  auto sx = [&](const Rational& x) { return svg_number(approx(Rational((x - min_x + margin) * scale))); };
  auto sy = [&](const Rational& y) { return svg_number(approx(Rational((max_y - y + margin) * scale))); };
  const std::string w = svg_number(approx(Rational((max_x - min_x + 2 * margin) * scale)));
  const std::string hgt = svg_number(approx(Rational((max_y - min_y + 2 * margin) * scale)));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + hgt +
         "\" viewBox=\"0 0 " + w + " " + hgt + "\">\n";
  out += "<g stroke=\"#000000\" stroke-width=\"1\" stroke-linejoin=\"round\">\n";
  for (const auto& t : h.triangles()) {
    const bool black = classify(t) == Color::Black;
    out += "<polygon class=\"" + std::string(black ? "black" : "white") + "\" fill=\"" +
           (black ? "#404040" : "#f0f0f0") + "\" points=\"";
    for (int i = 0; i < 3; ++i) {
      const Point p = label_position(base, t.labels[i]);
      if (i > 0) out += ' ';
      out += sx(p.x) + "," + sy(p.y);
    }
    out += "\"/>\n";
  }
  out += "</g>\n";
  if (options.vertex_labels) {
    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#b00000\">\n";
    for (const Label& v : vertices) {
      const Point p = label_position(base, v);
      out += "<text x=\"" + sx(p.x) + "\" y=\"" + sy(p.y) + "\">" + format_label(v) + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hyperdel::cli
