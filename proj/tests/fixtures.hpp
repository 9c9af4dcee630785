#pragma once

#include "hyperdel/verify.hpp"

#include <doctest.h>

namespace fixtures {

using namespace hyperdel;

inline std::shared_ptr<const PointSet> points(std::vector<Point> p) {
  return std::make_shared<const PointSet>(PointSet::from_points(std::move(p)));
}

// a=0 b=1 c=2 d=3; Delaunay diagonal bd.
inline std::shared_ptr<const PointSet> quad() { return points({{0, 0}, {4, 0}, {5, 3}, {1, 4}}); }
inline std::shared_ptr<const PointSet> triangle() { return points({{0, 0}, {4, 0}, {0, 4}}); }
inline std::shared_ptr<const PointSet> triangle_interior() { return points({{0, 0}, {4, 0}, {0, 4}, {1, 1}}); }
inline std::shared_ptr<const PointSet> triangle_two_interior() {
  return points({{0, 0}, {10, 0}, {3, 9}, {3, 2}, {5, 4}});
}
inline std::shared_ptr<const PointSet> pentagon() { return points({{0, 0}, {5, 0}, {7, 4}, {3, 7}, {-1, 4}}); }
inline std::shared_ptr<const PointSet> hexagon() { return points({{0, 0}, {6, 1}, {9, 5}, {7, 9}, {1, 8}, {-2, 3}}); }
inline std::shared_ptr<const PointSet> six_two_interior() {
  return points({{0, 0}, {11, 0}, {12, 7}, {2, 10}, {4, 3}, {7, 5}});
}

inline LabeledTriangle lt(std::initializer_list<int> a, std::initializer_list<int> b, std::initializer_list<int> c) {
  return make_labeled(make_label(a), make_label(b), make_label(c));
}

}  // namespace fixtures
