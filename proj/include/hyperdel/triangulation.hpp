#pragma once

#include "hyperdel/exact_geom.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hyperdel {

/// Vertex indices of a triangle, stored sorted ascending.
using Triangle = std::array<int, 3>;
/// Canonical form of a triangle collection: sorted, duplicate free.
using TriangleList = std::vector<Triangle>;
/// Sorted index pair.
using Edge = std::pair<int, int>;

Triangle make_triangle(int a, int b, int c);
Edge make_edge(int a, int b);
void canonicalize(TriangleList& triangles);

/// Triangles [i, j, k] of `points`, oriented counterclockwise.
std::array<Point, 3> triangle_points(std::span<const Point> points, const Triangle& t);

/// A triangulation of conv(A) whose vertices are a subset of A containing the hull.
class Triangulation {
 public:
  Triangulation(std::shared_ptr<const PointSet> base, TriangleList triangles);

  [[nodiscard]] const PointSet& base() const { return *base_; }
  [[nodiscard]] const std::shared_ptr<const PointSet>& base_ptr() const { return base_; }
  [[nodiscard]] const TriangleList& triangles() const { return triangles_; }
  [[nodiscard]] std::uint32_t vertex_mask() const { return vertex_mask_; }
  [[nodiscard]] std::vector<int> vertex_set() const;
  [[nodiscard]] bool has_vertex(int x) const { return (vertex_mask_ >> x) & 1U; }
  [[nodiscard]] bool complete() const { return vertex_mask_ == base_->all_mask(); }
  /// Triangles incident to the edge (1 on the hull, 2 inside).
  [[nodiscard]] const std::map<Edge, std::vector<int>>& adjacency() const { return adjacency_; }
  /// Index of the triangle containing p strictly inside, if any.
  [[nodiscard]] std::optional<int> locate(const Point& p) const;

  friend bool operator==(const Triangulation& a, const Triangulation& b) { return a.triangles_ == b.triangles_; }

 private:
  std::shared_ptr<const PointSet> base_;
  TriangleList triangles_;
  std::uint32_t vertex_mask_ = 0;
  std::map<Edge, std::vector<int>> adjacency_;
};

/// Every violated triangulation invariant, empty when the triangles tile conv(A)
/// edge to edge with exactly 2m + h - 2 triangles.
std::vector<std::string> check_triangulation(const PointSet& base, const TriangleList& triangles);

/// Delaunay triangulation of the points selected by `vertex_mask` (all points by default),
/// built from the empty-circle definition.
Triangulation delaunay(std::shared_ptr<const PointSet> base);
Triangulation delaunay(std::shared_ptr<const PointSet> base, std::uint32_t vertex_mask);

struct FlipResult {
  Triangulation triangulation;
  int flip_count = 0;
};

/// Lawson flipping until every interior edge has opposite angles summing to at most pi.
FlipResult lawson_to_delaunay(const Triangulation& start);

/// A polygonal region over a point universe: a counterclockwise simple
/// boundary cycle plus points strictly inside it. Boundary edges are constrained.
struct Region {
  std::vector<int> boundary;
  std::vector<int> interior;

  [[nodiscard]] bool empty() const { return boundary.size() < 3; }
  friend bool operator==(const Region&, const Region&) = default;
};

std::vector<Point> region_polygon(std::span<const Point> points, const Region& region);

/// Star of vertex x: link traversed counterclockwise, with x itself when x is on the hull.
Region star(const Triangulation& t, int x);

/// Star(P, x) clipped against conv(A \ {x}), split into its simple pieces.
/// Measure-zero intersections produce no pieces.
std::vector<Region> white_region(const Triangulation& t, int x);

/// Constrained Delaunay triangulation of a region: ear clipping, interior point
/// insertion, then Lawson flips that never cross the boundary.
TriangleList constrained_delaunay(std::span<const Point> points, const Region& region);

/// Memoized enumeration of all triangulations of regions over a fixed point universe.
/// Every interior point of a region is used as a vertex.
class RegionTriangulator {
 public:
  explicit RegionTriangulator(std::span<const Point> points) : points_(points) {}

  const std::vector<TriangleList>& all(const Region& region);
  std::uint64_t count(const Region& region);

 private:
  struct Split {
    Triangle triangle;
    std::vector<Region> parts;
  };
  std::vector<Split> splits(const Region& region) const;
  static std::vector<int> key(const Region& region);

  std::span<const Point> points_;
  std::map<std::vector<int>, std::vector<TriangleList>> memo_;
  std::map<std::vector<int>, std::uint64_t> count_memo_;
};

/// The region conv(A) with interior vertices vertex_mask \ hull.
Region hull_region(const PointSet& base, std::uint32_t vertex_mask);

/// All triangulations of conv(A) with vertex set exactly `vertex_mask` (must contain the hull).
std::vector<Triangulation> enumerate_triangulations(const std::shared_ptr<const PointSet>& base, std::uint32_t vertex_mask);
std::uint64_t count_triangulations(const PointSet& base, std::uint32_t vertex_mask);

}  // namespace hyperdel
