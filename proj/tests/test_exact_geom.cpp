#include "fixtures.hpp"

#include <cmath>

using namespace hyperdel;

namespace {

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("orient signs") {
  CHECK(orient({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orient({0, 0}, {0, 1}, {1, 0}) == -1);
  // Exact even where doubles would round.
  const Point a{q("1/3"), q("1/3")}, b{q("2/3"), q("2/3")}, c{q("1"), q("1")};
  CHECK(orient(a, b, c) == 0);
  CHECK(orient(a, b, {q("1"), q("1000000000000000001/1000000000000000000")}) == 1);
}

TEST_CASE("in_circle signs") {
  const Point a{0, 0}, b{1, 0}, c{0, 1};
  CHECK(in_circle(a, b, c, {q("9/10"), q("9/10")}) == 1);
  CHECK(in_circle(a, b, c, a) == 0);
  CHECK(in_circle(a, b, c, {100, 100}) == -1);
  // Orientation of abc does not matter.
  CHECK(in_circle(a, c, b, {q("9/10"), q("9/10")}) == 1);
  CHECK(in_circle(a, b, c, {1, 1}) == 0);
  CHECK_THROWS_AS(in_circle(a, {1, 1}, {2, 2}, b), GeometryError);
}

TEST_CASE("angle comparisons") {
  const AngleRef right{{0, 0}, {1, 0}, {0, 1}};
  const AngleRef half_right{{0, 0}, {1, 0}, {1, 1}};
  const AngleRef shallow{{0, 0}, {1, 0}, {7, 4}};
  CHECK(compare_angles(right, half_right) == std::weak_ordering::greater);
  CHECK(compare_angles(right, right) == std::weak_ordering::equivalent);
  CHECK(shallow.cotangent() == q("7/4"));
  CHECK(compare_angles(shallow, half_right) == std::weak_ordering::less);
  // Ray order and scaling are irrelevant.
  CHECK(compare_angles(AngleRef{{0, 0}, {0, 3}, {2, 0}}, right) == std::weak_ordering::equivalent);
}

TEST_CASE("angle pairs against pi") {
  const AngleRef right{{0, 0}, {1, 0}, {0, 1}};
  const AngleRef half_right{{0, 0}, {1, 0}, {1, 1}};
  const AngleRef obtuse{{0, 0}, {1, 0}, {-1, 1}};
  CHECK(angle_pair_vs_pi(right, right) == 0);
  CHECK(angle_pair_vs_pi(half_right, half_right) == -1);
  CHECK(angle_pair_vs_pi(obtuse, obtuse) == 1);
  CHECK(angle_pair_vs_pi(obtuse, half_right) == 0);
}

TEST_CASE("angle sums against pi are exact") {
  const Point a{0, 0}, b{4, 0}, c{1, 3};
  const std::vector<AngleRef> triangle{{a, b, c}, {b, a, c}, {c, a, b}};
  CHECK(angle_sum_vs_pi(triangle) == 0);
  const AngleRef half_right{{0, 0}, {1, 0}, {1, 1}};
  const AngleRef right{{0, 0}, {1, 0}, {0, 1}};
  CHECK(angle_sum_vs_pi(std::vector<AngleRef>(4, half_right)) == 0);
  CHECK(angle_sum_vs_pi(std::vector<AngleRef>(3, half_right)) == -1);
  CHECK(angle_sum_vs_pi(std::vector<AngleRef>(5, half_right)) == 1);
  CHECK(angle_sum_vs_pi(std::vector<AngleRef>(3, right)) == 1);
  CHECK(angle_sum_vs_pi(std::vector<AngleRef>{}) == -1);

  // Agrees with floating point wherever the margin is comfortable.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-9, 9);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<AngleRef> angles;
    double total = 0;
    const int count = 1 + trial % 5;
    for (int i = 0; i < count; ++i) {
      AngleRef r{{0, 0}, {d(rng), d(rng)}, {d(rng), d(rng)}};
      if (!r.valid()) continue;
      total += approx_degrees(r);
      angles.push_back(r);
    }
    if (std::abs(total - 180) < 1e-6) continue;
    ++compared;
    CHECK(angle_sum_vs_pi(angles) == (total > 180 ? 1 : -1));
  }
  CHECK(compared > 300);
}

TEST_CASE("cotangent order matches measured order") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const AngleRef p{{0, 0}, {d(rng), d(rng)}, {d(rng), d(rng)}};
    const AngleRef r{{1, 1}, {d(rng), d(rng)}, {d(rng), d(rng)}};
    if (!p.valid() || !r.valid()) continue;
    const double gap = approx_degrees(p) - approx_degrees(r);
    if (std::abs(gap) < 1e-9) continue;
    CHECK(compare_angles(p, r) == (gap > 0 ? std::weak_ordering::greater : std::weak_ordering::less));
  }
}

TEST_CASE("convex hull") {
  const std::vector<Point> tri{{0, 0}, {4, 0}, {0, 4}};
  CHECK(convex_hull(tri) == std::vector<int>{0, 1, 2});
  const std::vector<Point> tri_inner{{0, 0}, {4, 0}, {0, 4}, {1, 1}};
  CHECK(convex_hull(tri_inner) == std::vector<int>{0, 1, 2});
  const std::vector<Point> scrambled{{5, 3}, {0, 0}, {1, 4}, {4, 0}};
  CHECK(convex_hull(scrambled) == std::vector<int>{0, 2, 1, 3});
  const std::vector<Point> cw{{0, 0}, {0, 4}, {4, 0}};
  CHECK(convex_hull(cw) == std::vector<int>{0, 2, 1});
  const std::vector<Point> line{{0, 0}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(convex_hull(line), GeometryError);
}

TEST_CASE("genericity") {
  auto square = validate_generic({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  REQUIRE(std::holds_alternative<GenericityViolation>(square));
  CHECK(std::get<GenericityViolation>(square).kind == GenericityViolation::Kind::CocircularQuadruple);
  CHECK(std::get<GenericityViolation>(square).indices == std::vector<int>{0, 1, 2, 3});

  auto line = validate_generic({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
  REQUIRE(std::holds_alternative<GenericityViolation>(line));
  CHECK(std::get<GenericityViolation>(line).kind == GenericityViolation::Kind::CollinearTriple);
  CHECK(std::get<GenericityViolation>(line).indices == std::vector<int>{0, 1, 2});

  auto twice = validate_generic({{0, 0}, {1, 0}, {0, 0}});
  REQUIRE(std::holds_alternative<GenericityViolation>(twice));
  CHECK(std::get<GenericityViolation>(twice).kind == GenericityViolation::Kind::DuplicatePoint);

  auto few = validate_generic({{0, 0}, {1, 0}});
  REQUIRE(std::holds_alternative<GenericityViolation>(few));
  CHECK(std::get<GenericityViolation>(few).kind == GenericityViolation::Kind::TooFewPoints);

  auto quad = validate_generic({{0, 0}, {4, 0}, {5, 3}, {1, 4}});
  REQUIRE(std::holds_alternative<PointSet>(quad));
  const PointSet& set = std::get<PointSet>(quad);
  CHECK(set.convex_position());
  CHECK(set.hull() == std::vector<int>{0, 1, 2, 3});
  CHECK(set.index_of({5, 3}) == 2);
  CHECK_FALSE(set.index_of({5, 4}).has_value());
  CHECK_THROWS_AS(PointSet::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), GeometryError);
}

TEST_CASE("rational text") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(Rational(-5)) == "-5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2/-3"), std::invalid_argument);
}

TEST_CASE("polygon helpers") {
  const std::vector<Point> square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  CHECK(signed_area2(square) == 32);
  CHECK(locate_in_polygon({2, 2}, square) == 1);
  CHECK(locate_in_polygon({4, 2}, square) == 0);
  CHECK(locate_in_polygon({5, 2}, square) == -1);

  const std::vector<Point> clip{{2, 0}, {6, 0}, {2, 4}};
  const auto piece = clip_to_convex(square, clip);
  CHECK(signed_area2(piece) == 12);

  CHECK(on_segment({1, 1}, {0, 0}, {2, 2}));
  CHECK_FALSE(strictly_on_segment({0, 0}, {0, 0}, {2, 2}));
  CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK(segments_conflict({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK_FALSE(segments_conflict({0, 0}, {2, 2}, {2, 2}, {3, 0}));
  CHECK_FALSE(segments_conflict({0, 0}, {2, 2}, {0, 0}, {2, 2}));
  CHECK(segments_conflict({0, 0}, {2, 2}, {1, 1}, {3, 3}));
  CHECK(in_closed_triangle({1, 0}, {0, 0}, {2, 0}, {0, 2}));
  CHECK(in_closed_triangle({1, 0}, {0, 0}, {0, 2}, {2, 0}));
  CHECK_FALSE(in_closed_triangle({2, 2}, {0, 0}, {2, 0}, {0, 2}));

  const std::array<Point, 3> t{Point{0, 0}, Point{4, 0}, Point{0, 4}};
  const std::array<Point, 3> u{Point{1, 1}, Point{5, 1}, Point{1, 5}};
  const std::array<Point, 3> v{Point{4, 0}, Point{4, 4}, Point{0, 4}};
  CHECK(triangle_interiors_overlap(t, u));
  CHECK_FALSE(triangle_interiors_overlap(t, v));
}
