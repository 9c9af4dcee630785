#include "fixtures.hpp"
#include "point_file.hpp"
#include "svg.hpp"

#include <sstream>

using namespace hyperdel;
using namespace hyperdel::cli;

namespace {

std::vector<Point> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_points(in);
}

std::size_t line_of_error(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("point files") {
  const auto p = parse("# header\n\n1/2 -3\n  4\t5/7\n# trailing\n");
  REQUIRE(p.size() == 2);
  CHECK(p[0] == Point(Rational(1, 2), Rational(-3)));
  CHECK(p[1] == Point(Rational(4), Rational(5, 7)));
  CHECK(parse(format_points(p)) == p);
  CHECK(format_points(p) == "1/2 -3\n4 5/7\n");

  CHECK(line_of_error("0 0\n1\n") == 2);
  CHECK(line_of_error("0 0\n1 2\n# ok\n3 4 5\n") == 4);
  CHECK(line_of_error("0 0\n1/0 2\n") == 2);
  CHECK(line_of_error("a b\n") == 1);
  CHECK(line_of_error("0 0\r\n1 1\r\n") == 0);
}

TEST_CASE("triangle specs") {
  CHECK(parse_triangle_spec("0-1-2,2-3-0", 4) == TriangleList{{0, 1, 2}, {0, 2, 3}});
  CHECK(parse_triangle_spec("0 1 2; 0 2 3", 4) == TriangleList{{0, 1, 2}, {0, 2, 3}});
  CHECK_THROWS_AS(parse_triangle_spec("0-1-4", 4), InputError);
  CHECK_THROWS_AS(parse_triangle_spec("0-1", 4), InputError);
  CHECK_THROWS_AS(parse_triangle_spec("0-1-x", 4), InputError);
  CHECK_THROWS_AS(parse_triangle_spec("0-1-2,2-1-0", 4), InputError);
}

TEST_CASE("svg output") {
  CHECK(svg_number(1.0 / 3) == "0.333333333");
  CHECK(svg_number(800) == "800");
  CHECK(svg_number(-0.0) == "0");

  const auto base = fixtures::pentagon();
  const auto h = order_k_delaunay(base, 2);
  const auto a = render_svg(h, {true});
  const auto b = render_svg(order_k_delaunay(fixtures::pentagon(), 2), {true});
  CHECK(a == b);
  std::size_t polygons = 0, blacks = 0;
  for (std::size_t at = a.find("<polygon"); at != std::string::npos; at = a.find("<polygon", at + 1)) ++polygons;
  for (std::size_t at = a.find("class=\"black\""); at != std::string::npos; at = a.find("class=\"black\"", at + 1)) ++blacks;
  CHECK(polygons == h.size());
  CHECK(blacks == triangle_counts(h).black);
  CHECK(a.find("<text") != std::string::npos);
  CHECK(render_svg(h).find("<text") == std::string::npos);
  CHECK(a.rfind("<?xml", 0) == 0);
}
