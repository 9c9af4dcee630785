#include "fixtures.hpp"

#include <cstdlib>
#include <set>

using namespace hyperdel;
using fixtures::lt;

namespace {

std::set<std::vector<LabeledTriangle>> as_set(const std::vector<Hypertriangulation>& family) {
  std::set<std::vector<LabeledTriangle>> out;
  for (const auto& h : family) out.insert(h.triangles());
  return out;
}

}  // namespace

TEST_CASE("labels") {
  const Label l = make_label({5, 0, 3});
  CHECK(l.level() == 3);
  CHECK(l.indices() == std::vector<int>{0, 3, 5});
  CHECK(format_label(l) == "0,3,5");
  CHECK(l.contains(3));
  CHECK_FALSE(l.contains(1));
  const auto base = fixtures::quad();
  CHECK(label_sum(*base, make_label({1, 2})) == Point(9, 3));
  CHECK(label_position(*base, make_label({1, 2})) == Point(Rational(9, 2), Rational(3, 2)));
}

TEST_CASE("classification") {
  CHECK(classify(lt({0, 1}, {0, 2}, {1, 2})) == Color::Black);
  CHECK(classify(lt({4, 0}, {4, 1}, {4, 2})) == Color::White);
  CHECK(classify(lt({3, 0, 1}, {3, 0, 2}, {3, 1, 2})) == Color::Black);
  CHECK(classify(lt({0}, {1}, {2})) == Color::White);
  CHECK(classify(lt({0, 1, 2}, {0, 1, 3}, {0, 1, 4})) == Color::White);
  CHECK_THROWS_AS(classify(lt({0, 1, 2}, {3, 4, 5}, {0, 3, 6})), GeometryError);
}

TEST_CASE("aging") {
  const auto white1 = lt({0}, {1}, {2});
  CHECK(age_triangle(white1) == lt({0, 1}, {0, 2}, {1, 2}));
  CHECK(inverse_age_triangle(age_triangle(white1)) == white1);
  const auto white2 = lt({4, 0}, {4, 1}, {4, 2});
  CHECK(age_triangle(white2) == lt({4, 0, 1}, {4, 0, 2}, {4, 1, 2}));
  CHECK(inverse_age_triangle(age_triangle(white2)) == white2);
  CHECK(aged_black({0, 1, 2}) == lt({0, 1}, {0, 2}, {1, 2}));
  CHECK(white_in_region(3, {0, 1, 2}) == lt({3, 0}, {3, 1}, {3, 2}));
  CHECK_THROWS_AS(age_triangle(lt({0, 1}, {0, 2}, {1, 2})), GeometryError);
  CHECK_THROWS_AS(inverse_age_triangle(white1), GeometryError);
}

TEST_CASE("f of small triangulations") {
  const auto tri = fixtures::triangle();
  const auto single = f_of(delaunay(tri));
  CHECK(single.level2.triangles() == std::vector{lt({0, 1}, {0, 2}, {1, 2})});
  CHECK(single.phi.pieces.empty());

  // Quadrilateral abcd with diagonal bd: whites are acd (owner b) and abc (owner d).
  const auto quad = f_of(delaunay(fixtures::quad()));
  CHECK(quad.phi.black.triangles() == TriangleList{{0, 1, 3}, {1, 2, 3}});
  REQUIRE(quad.phi.pieces.size() == 2);
  CHECK(quad.phi.white_of(1) == TriangleList{{0, 2, 3}});
  CHECK(quad.phi.white_of(3) == TriangleList{{0, 1, 2}});
  CHECK(quad.phi.all_triangles().size() == 4);
  CHECK(triangle_counts(quad.level2) == TriangleCounts{2, 2});

  // Triangle with an interior point: the hull vertices' stars clip to measure zero,
  // so only the interior point owns a white triangle.
  const auto fan = f_of(delaunay(fixtures::triangle_interior()));
  CHECK(triangle_counts(fan.level2) == TriangleCounts{3, 1});
  CHECK(fan.phi.white_of(3) == TriangleList{{0, 1, 2}});
  CHECK(fan.phi.white_of(0).empty());
  CHECK(validate_hypertriangulation(fan.level2).ok());
}

TEST_CASE("inverse aging") {
  const auto base = fixtures::quad();
  const auto d = delaunay(base);
  CHECK(inverse_aging(f_of(d).level2) == d);
  Rng rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    const auto set = random_generic_points(rng, 4 + trial % 4, 40);
    for (const auto& p : enumerate_triangulations(set, set->all_mask())) {
      const auto f = f_of(p);
      CHECK(inverse_aging(f.level2) == p);
      CHECK(validate_hypertriangulation(f.level2).ok());
    }
    CHECK(inverse_aging(order_k_delaunay(set, 2)) == delaunay(set));
  }
}

TEST_CASE("order-k delaunay") {
  const auto tri = fixtures::triangle();
  const auto t2 = order_k_delaunay(tri, 2);
  CHECK(t2.triangles() == std::vector{lt({0, 1}, {0, 2}, {1, 2})});

  const auto quad = fixtures::quad();
  const auto q3 = order_k_delaunay(quad, 3);
  // Inverted copies of the non-Delaunay triangles abc and acd.
  CHECK(q3.triangles() == std::vector{lt({0, 1, 2}, {0, 1, 3}, {1, 2, 3}), lt({0, 1, 3}, {0, 2, 3}, {1, 2, 3})});
  CHECK(triangle_counts(q3) == TriangleCounts{2, 0});
  const auto q2 = order_k_delaunay(quad, 2);
  CHECK(triangle_counts(q2) == TriangleCounts{2, 2});
  CHECK(q2 == f_of(delaunay(quad)).level2);

  const auto pentagon = fixtures::pentagon();
  CHECK(triangle_counts(order_k_delaunay(pentagon, 4)) == TriangleCounts{3, 0});
  const auto hexagon = fixtures::hexagon();
  CHECK(triangle_counts(order_k_delaunay(hexagon, 5)) == TriangleCounts{4, 0});
  CHECK(order_k_delaunay(pentagon, 1) == level1_of(delaunay(pentagon)));
  CHECK_THROWS_AS(order_k_delaunay(pentagon, 5), GeometryError);
}

TEST_CASE("order-k delaunay tiles for every k") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const auto base = random_generic_points(rng, 4 + trial % 6, 60);
    for (int k = 1; k < static_cast<int>(base->size()); ++k) {
      const auto h = order_k_delaunay(base, k);
      const auto v = validate_hypertriangulation(h);
      CHECK_MESSAGE(v.ok(), describe_points(*base), " k=", k);
      if (k + 1 < static_cast<int>(base->size())) {
        std::vector<LabeledTriangle> aged;
        for (const auto& w : h.of_color(Color::White)) aged.push_back(age_triangle(w));
        std::sort(aged.begin(), aged.end());
        CHECK(aged == order_k_delaunay(base, k + 1).of_color(Color::Black));
      }
    }
  }
}

TEST_CASE("validation catches broken structures") {
  const auto quad = fixtures::quad();
  const auto d2 = order_k_delaunay(quad, 2);
  auto tris = d2.triangles();
  tris.pop_back();
  CHECK_FALSE(validate_hypertriangulation(Hypertriangulation(quad, 2, tris)).tiling.empty());

  // Overlapping pair covering the right area twice over the diagonal.
  const Hypertriangulation overlap(quad, 1, {lt({0}, {1}, {2}), lt({0}, {1}, {3})});
  CHECK_FALSE(validate_hypertriangulation(overlap).tiling.empty());

  // Labels sharing too little for level 3.
  const auto pentagon = fixtures::pentagon();
  const Hypertriangulation loose(pentagon, 3, {lt({0, 1, 2}, {0, 3, 4}, {1, 3, 4})});
  const auto v = validate_hypertriangulation(loose);
  CHECK_FALSE(v.ok());
  CHECK((!v.edge_labels.empty() || !v.color.empty()));
}

TEST_CASE("complete level-2 enumeration") {
  CHECK(enumerate_complete_level2(fixtures::triangle()).size() == 1);
  CHECK(enumerate_complete_level2(fixtures::quad()).size() == 2);
  CHECK(enumerate_complete_level2(fixtures::triangle_interior()).size() == 1);
  CHECK(enumerate_complete_level2(fixtures::pentagon()).size() == 10);
  CHECK(enumerate_complete_level2(fixtures::triangle_two_interior()).size() == 2);
  CHECK(enumerate_complete_level2(fixtures::six_two_interior()).size() == 20);
  CHECK(count_level2(fixtures::six_two_interior(), false) == 20);
  for (const auto& h : enumerate_complete_level2(fixtures::six_two_interior())) {
    CHECK(validate_hypertriangulation(h).ok());
    CHECK(h.size() == 12);
  }
}

TEST_CASE("maximal level-2 enumeration") {
  const auto quad = enumerate_maximal_level2(fixtures::quad());
  CHECK(quad.size() == 2);
  for (const auto& h : quad) CHECK(h.size() == 4);
  CHECK(as_set(quad) == as_set(enumerate_complete_level2(fixtures::quad())));

  // Black hull triangle only: the omitted point becomes a Steiner vertex of each white piece that holds it.
  const auto fan = enumerate_maximal_level2(fixtures::triangle_interior());
  CHECK(fan.size() == 2);
  for (const auto& h : fan) CHECK(h.size() == 4);
  bool found_partial = false;
  for (const auto& h : fan) {
    if (triangle_counts(h).black != 1) continue;
    found_partial = true;
    for (const auto& w : h.of_color(Color::White)) {
      bool steiner = false;
      for (const Label& l : w.labels) steiner = steiner || l.contains(3);
      CHECK(steiner);
    }
  }
  CHECK(found_partial);

  const auto five = enumerate_maximal_level2(fixtures::triangle_two_interior());
  CHECK(five.size() == 6);
  const auto six = enumerate_maximal_level2(fixtures::six_two_interior());
  CHECK(six.size() == 74);
  CHECK(count_level2(fixtures::six_two_interior(), true) == 74);
  for (const auto& h : six) {
    CHECK(validate_hypertriangulation(h).ok());
    CHECK(h.size() == 12);
  }
}

TEST_CASE("level-2 families match the exhaustive tiling search") {
  for (const auto& base : {fixtures::quad(), fixtures::triangle_interior(), fixtures::triangle_two_interior(),
                           fixtures::pentagon()}) {
    const auto all = enumerate_all_hypertriangulations(base, 2);
    for (const auto& h : all) CHECK(validate_hypertriangulation(h).ok());
    CHECK(as_set(maximal_members(all)) == as_set(enumerate_maximal_level2(base)));
  }
  CHECK(enumerate_all_hypertriangulations(fixtures::triangle_two_interior(), 2).size() == 14);
  Rng rng(32);
  for (int trial = 0; trial < 6; ++trial) {
    const auto base = random_generic_points(rng, 5, 40);
    std::vector<Hypertriangulation> all;
    try {
      all = enumerate_all_hypertriangulations(base, 2);
    } catch (const GeometryError&) {
      continue;  // two pair averages coincide
    }
    CHECK(as_set(maximal_members(all)) == as_set(enumerate_maximal_level2(base)));
  }
}

TEST_CASE("level-3 convex enumeration") {
  const auto quad = fixtures::quad();
  const auto q3 = enumerate_level3_convex(quad);
  REQUIRE(q3.size() == 2);
  CHECK(std::count(q3.begin(), q3.end(), order_k_delaunay(quad, 3)) == 1);
  CHECK(as_set(q3) == as_set(enumerate_all_hypertriangulations(quad, 3)));

  const auto pentagon = fixtures::pentagon();
  const auto p3 = enumerate_level3_convex(pentagon);
  CHECK(p3.size() == 10);
  for (const auto& h : p3) CHECK(validate_hypertriangulation(h).ok());
  CHECK(as_set(p3) == as_set(enumerate_all_hypertriangulations(pentagon, 3)));

  const auto hexagon = fixtures::hexagon();
  const auto h3 = enumerate_level3_convex(hexagon);
  CHECK(h3.size() == 148);
  for (const auto& h : h3) CHECK(validate_hypertriangulation(h).ok());

  CHECK_THROWS_AS(enumerate_level3_convex(fixtures::triangle_interior()), GeometryError);
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate_maximal_level2(fixtures::pentagon(), 3), EnumerationLimit);
  CHECK_THROWS_AS(enumerate_level3_convex(fixtures::pentagon(), 3), EnumerationLimit);
  setenv("HYPERDEL_MAX_CELLS", "5", 1);
  CHECK(max_cells_from_env() == 5);
  CHECK_THROWS_AS(enumerate_maximal_level2(fixtures::pentagon(), max_cells_from_env()), EnumerationLimit);
  setenv("HYPERDEL_MAX_CELLS", "junk", 1);
  CHECK(max_cells_from_env(17) == 17);
  unsetenv("HYPERDEL_MAX_CELLS");
  CHECK(max_cells_from_env(17) == 17);
  CHECK(max_cells_from_env() == kUnlimited);
}

TEST_CASE("subdivision order") {
  const auto fan = enumerate_maximal_level2(fixtures::triangle_two_interior());
  const auto all = enumerate_all_hypertriangulations(fixtures::triangle_two_interior(), 2);
  CHECK(all.size() > fan.size());
  for (const auto& h : all) {
    bool under_maximal = false;
    for (const auto& m : fan) under_maximal = under_maximal || h == m || subdivides(m, h);
    CHECK(under_maximal);
  }
  CHECK_FALSE(subdivides(fan[0], fan[0]));
}
