#include "point_file.hpp"

#include <fstream>
#include <sstream>

namespace hyperdel::cli {

InputError::InputError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<Point> parse_points(std::istream& in) {
  std::vector<Point> points;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    std::istringstream fields(text);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.size() != 2)
      throw InputError(line, "expected 2 coordinates, found " + std::to_string(parts.size()));
    try {
      points.emplace_back(parse_rational(parts[0]), parse_rational(parts[1]));
    } catch (const std::invalid_argument& e) {
      throw InputError(line, e.what());
    }
  }
  return points;
}

std::vector<Point> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(0, "cannot open '" + path + "'");
  return parse_points(in);
}

std::shared_ptr<const PointSet> load_point_set(const std::string& path) {
  auto points = read_point_file(path);
  if (points.size() > kMaxPoints)
    throw InputError(0, std::to_string(points.size()) + " points, at most " + std::to_string(kMaxPoints) + " supported");
  auto result = validate_generic(std::move(points));
  if (auto* violation = std::get_if<GenericityViolation>(&result)) throw InputError(0, violation->describe());
  return std::make_shared<const PointSet>(std::move(std::get<PointSet>(result)));
}

std::string format_points(std::span<const Point> points) {
  std::string out;
  for (const Point& p : points) out += format_rational(p.x) + " " + format_rational(p.y) + "\n";
  return out;
}

TriangleList parse_triangle_spec(const std::string& text, std::size_t n) {
  TriangleList out;
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ';') c = ',';
  std::istringstream groups(normalized);
  for (std::string group; std::getline(groups, group, ',');) {
    for (char& c : group)
      if (c == '-') c = ' ';
    std::istringstream item(group);
    std::vector<long> v;
    for (long x; item >> x;) v.push_back(x);
    if (v.empty() && item.eof()) continue;
    if (!item.eof() || v.size() != 3) throw InputError(0, "bad triangle '" + group + "' in triangulation spec");
    for (long x : v)
      if (x < 0 || static_cast<std::size_t>(x) >= n)
        throw InputError(0, "vertex index " + std::to_string(x) + " out of range");
    out.push_back(make_triangle(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])));
  }
  const std::size_t before = out.size();
  canonicalize(out);
  if (out.size() != before) throw InputError(0, "repeated triangle in triangulation spec");
  return out;
}

}  // namespace hyperdel::cli
