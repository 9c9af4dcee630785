#pragma once

#include "hyperdel/hypertri.hpp"

#include <iosfwd>
#include <memory>

namespace hyperdel::cli {

/// Malformed or non-generic input. `line` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One point per non-comment line: two coordinates, each an integer or "p/q".
/// Blank lines and lines starting with '#' are skipped.
std::vector<Point> parse_points(std::istream& in);
std::vector<Point> read_point_file(const std::string& path);

/// Parses and checks genericity; a violation names the offending indices.
std::shared_ptr<const PointSet> load_point_set(const std::string& path);

/// Canonical text form; parse_points(format_points(p)) == p.
std::string format_points(std::span<const Point> points);

/// "0-1-2,0-2-3" or "0 1 2; 0 2 3". Indices must be below n.
TriangleList parse_triangle_spec(const std::string& text, std::size_t n);

}  // namespace hyperdel::cli
