#include "hyperdel/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace hyperdel {

Triangle make_triangle(int a, int b, int c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

void canonicalize(TriangleList& triangles) {
  for (auto& t : triangles) std::sort(t.begin(), t.end());
  std::sort(triangles.begin(), triangles.end());
  triangles.erase(std::unique(triangles.begin(), triangles.end()), triangles.end());
}

std::array<Point, 3> triangle_points(std::span<const Point> points, const Triangle& t) {
  std::array<Point, 3> p{points[t[0]], points[t[1]], points[t[2]]};
  if (orient(p[0], p[1], p[2]) < 0) std::swap(p[1], p[2]);
  return p;
}

namespace {

std::map<Edge, std::vector<int>> build_adjacency(const TriangleList& triangles) {
  std::map<Edge, std::vector<int>> adjacency;
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const Triangle& t = triangles[i];
    for (int e = 0; e < 3; ++e) adjacency[make_edge(t[e], t[(e + 1) % 3])].push_back(static_cast<int>(i));
  }
  return adjacency;
}

int opposite_vertex(const Triangle& t, const Edge& e) {
  for (int v : t)
    if (v != e.first && v != e.second) return v;
  throw GeometryError("edge not in triangle");
}

// Rotates a cycle so that its smallest entry comes first.
void rotate_to_min(std::vector<int>& cycle) {
  if (!cycle.empty()) std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
}

// Removes spikes, collinear vertices and duplicates from a clipped cycle and
// splits it at repeated vertices into simple counterclockwise pieces.
void split_cycles(std::vector<int> cycle, std::span<const Point> points, std::vector<std::vector<int>>& out) {
  bool changed = true;
  while (changed && cycle.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < cycle.size() && cycle.size() >= 2; ++i) {
      const std::size_t n = cycle.size();
      if (cycle[i] == cycle[(i + 1) % n]) {
        cycle.erase(cycle.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
    if (changed || cycle.size() < 3) continue;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const std::size_t n = cycle.size();
      const int prev = cycle[(i + n - 1) % n];
      const int next = cycle[(i + 1) % n];
      if (prev == next || orient(points[prev], points[cycle[i]], points[next]) == 0) {
        cycle.erase(cycle.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (cycle.size() < 3) return;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    for (std::size_t j = i + 1; j < cycle.size(); ++j) {
      if (cycle[i] != cycle[j]) continue;
      std::vector<int> first(cycle.begin() + static_cast<long>(i), cycle.begin() + static_cast<long>(j));
      std::vector<int> second(cycle.begin() + static_cast<long>(j), cycle.end());
      second.insert(second.end(), cycle.begin(), cycle.begin() + static_cast<long>(i));
      split_cycles(std::move(first), points, out);
      split_cycles(std::move(second), points, out);
      return;
    }
  }
  std::vector<Point> polygon;
  for (int v : cycle) polygon.push_back(points[v]);
  if (signed_area2(polygon) <= 0) return;
  rotate_to_min(cycle);
  out.push_back(std::move(cycle));
}

}  // namespace

Triangulation::Triangulation(std::shared_ptr<const PointSet> base, TriangleList triangles)
    : base_(std::move(base)), triangles_(std::move(triangles)) {
  canonicalize(triangles_);
  for (const auto& t : triangles_)
    for (int v : t) {
      if (v < 0 || v >= static_cast<int>(base_->size())) throw GeometryError("triangle vertex out of range");
      vertex_mask_ |= std::uint32_t{1} << v;
    }
  adjacency_ = build_adjacency(triangles_);
}

std::vector<int> Triangulation::vertex_set() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(base_->size()); ++i)
    if (has_vertex(i)) out.push_back(i);
  return out;
}

std::optional<int> Triangulation::locate(const Point& p) const {
  for (std::size_t i = 0; i < triangles_.size(); ++i) {
    const auto q = triangle_points(base_->points(), triangles_[i]);
    if (orient(q[0], q[1], p) > 0 && orient(q[1], q[2], p) > 0 && orient(q[2], q[0], p) > 0) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::string> check_triangulation(const PointSet& base, const TriangleList& input) {
  std::vector<std::string> problems;
  TriangleList triangles = input;
  canonicalize(triangles);
  if (triangles.size() != input.size()) problems.emplace_back("duplicate triangles");
  const int n = static_cast<int>(base.size());
  std::uint32_t mask = 0;
  for (const auto& t : triangles) {
    for (int v : t) {
      if (v < 0 || v >= n) {
        problems.emplace_back("vertex index out of range");
        return problems;
      }
      mask |= std::uint32_t{1} << v;
    }
    if (t[0] == t[1] || t[1] == t[2] || orient(base[t[0]], base[t[1]], base[t[2]]) == 0)
      problems.emplace_back("degenerate triangle");
  }
  if (!problems.empty()) return problems;
  if ((mask & base.hull_mask()) != base.hull_mask()) problems.emplace_back("vertex set misses a hull vertex");

  std::vector<Point> hull;
  for (int h : base.hull()) hull.push_back(base[h]);
  Rational area = 0;
  for (const auto& t : triangles) area += signed_area2(triangle_points(base.points(), t));
  if (area != signed_area2(hull)) problems.emplace_back("area sum differs from hull area");

  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto p = triangle_points(base.points(), triangles[i]);
    for (std::size_t j = i + 1; j < triangles.size(); ++j) {
      const auto q = triangle_points(base.points(), triangles[j]);
      if (triangle_interiors_overlap(p, q)) problems.push_back("overlapping triangles " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  const auto adjacency = build_adjacency(triangles);
  for (const auto& [edge, incident] : adjacency) {
    for (int v = 0; v < n; ++v)
      if (((mask >> v) & 1U) && strictly_on_segment(base[v], base[edge.first], base[edge.second]))
        problems.emplace_back("vertex on the interior of an edge");
    if (incident.size() > 2) problems.emplace_back("edge in more than two triangles");
    if (incident.size() == 1) {
      bool hull_edge = false;
      const auto& h = base.hull();
      for (std::size_t i = 0; i < h.size(); ++i)
        if (make_edge(h[i], h[(i + 1) % h.size()]) == edge) hull_edge = true;
      if (!hull_edge) problems.emplace_back("interior edge with one incident triangle");
    }
  }
  const int h = static_cast<int>(base.hull().size());
  const int m = std::popcount(mask) - h;
  if (static_cast<int>(triangles.size()) != 2 * m + h - 2) problems.emplace_back("triangle count differs from 2m+h-2");
  return problems;
}

Triangulation delaunay(std::shared_ptr<const PointSet> base) {
  const std::uint32_t all = base->all_mask();
  return delaunay(std::move(base), all);
}

Triangulation delaunay(std::shared_ptr<const PointSet> base, std::uint32_t vertex_mask) {
  const PointSet& a = *base;
  if ((vertex_mask & a.hull_mask()) != a.hull_mask()) throw GeometryError("vertex set must contain the hull");
  const int n = static_cast<int>(a.size());
  TriangleList triangles;
  for (int i = 0; i < n; ++i) {
    if (!((vertex_mask >> i) & 1U)) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!((vertex_mask >> j) & 1U)) continue;
      for (int k = j + 1; k < n; ++k) {
        if (!((vertex_mask >> k) & 1U)) continue;
        bool empty = true;
        for (int l = 0; l < n && empty; ++l) {
          if (l == i || l == j || l == k || !((vertex_mask >> l) & 1U)) continue;
          if (in_circle(a[i], a[j], a[k], a[l]) > 0) empty = false;
        }
        if (empty) triangles.push_back({i, j, k});
      }
    }
  }
  return Triangulation(std::move(base), std::move(triangles));
}

FlipResult lawson_to_delaunay(const Triangulation& start) {
  const auto& base = start.base_ptr();
  const auto points = base->points();
  TriangleList triangles = start.triangles();
  int flips = 0;
  for (;;) {
    const auto adjacency = build_adjacency(triangles);
    bool flipped = false;
    for (const auto& [edge, incident] : adjacency) {
      if (incident.size() != 2) continue;
      const int p = opposite_vertex(triangles[incident[0]], edge);
      const int q = opposite_vertex(triangles[incident[1]], edge);
      const AngleRef at_p{points[p], points[edge.first], points[edge.second]};
      const AngleRef at_q{points[q], points[edge.first], points[edge.second]};
      if (angle_pair_vs_pi(at_p, at_q) <= 0) continue;
      const int t0 = incident[0], t1 = incident[1];
      triangles[t0] = make_triangle(p, q, edge.first);
      triangles[t1] = make_triangle(p, q, edge.second);
      ++flips;
      flipped = true;
      break;
    }
    if (!flipped) break;
  }
  return {Triangulation(base, std::move(triangles)), flips};
}

std::vector<Point> region_polygon(std::span<const Point> points, const Region& region) {
  std::vector<Point> polygon;
  polygon.reserve(region.boundary.size());
  for (int v : region.boundary) polygon.push_back(points[v]);
  return polygon;
}

Region star(const Triangulation& t, int x) {
  if (!t.has_vertex(x)) throw GeometryError("vertex " + std::to_string(x) + " is not in the triangulation");
  const auto points = t.base().points();
  std::map<int, int> next;
  std::set<int> has_incoming;
  for (const auto& tri : t.triangles()) {
    if (std::find(tri.begin(), tri.end(), x) == tri.end()) continue;
    int a = -1, b = -1;
    for (int v : tri) {
      if (v == x) continue;
      (a < 0 ? a : b) = v;
    }
    if (orient(points[x], points[a], points[b]) < 0) std::swap(a, b);
    next[a] = b;
    has_incoming.insert(b);
  }
  Region region;
  int start = next.begin()->first;
  const bool on_hull = t.base().on_hull(x);
  if (on_hull) {
    for (const auto& [from, to] : next)
      if (!has_incoming.count(from)) start = from;
    region.boundary.push_back(x);
  }
  int v = start;
  for (std::size_t guard = 0; guard <= next.size(); ++guard) {
    region.boundary.push_back(v);
    const auto it = next.find(v);
    if (it == next.end()) break;
    v = it->second;
    if (v == start) break;
  }
  rotate_to_min(region.boundary);
  return region;
}

std::vector<Region> white_region(const Triangulation& t, int x) {
  const PointSet& base = t.base();
  const Region s = star(t, x);
  if (!base.on_hull(x)) return {s};
  std::vector<Point> others;
  std::vector<int> other_index;
  for (int i = 0; i < static_cast<int>(base.size()); ++i) {
    if (i == x) continue;
    others.push_back(base[i]);
    other_index.push_back(i);
  }
  if (others.size() < 3) return {};
  std::vector<Point> clip;
  for (int h : convex_hull(others)) clip.push_back(others[h]);
  const auto clipped = clip_to_convex(region_polygon(base.points(), s), clip);
  std::vector<int> cycle;
  for (const Point& p : clipped) {
    const auto index = base.index_of(p);
    if (!index) throw GeometryError("white region clipping produced a point outside A");
    cycle.push_back(*index);
  }
  std::vector<std::vector<int>> pieces;
  split_cycles(std::move(cycle), base.points(), pieces);
  std::vector<Region> out;
  for (auto& piece : pieces) out.push_back({std::move(piece), {}});
  std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) { return a.boundary < b.boundary; });
  return out;
}

TriangleList constrained_delaunay(std::span<const Point> points, const Region& region) {
  if (region.empty()) return {};
  // Ear clipping.
  std::vector<int> poly = region.boundary;
  std::vector<std::array<int, 3>> tris;  // counterclockwise
  while (poly.size() > 3) {
    const std::size_t n = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const int a = poly[(i + n - 1) % n], b = poly[i], c = poly[(i + 1) % n];
      if (orient(points[a], points[b], points[c]) <= 0) continue;
      bool ear = true;
      for (int v : poly) {
        if (v == a || v == b || v == c) continue;
        if (in_closed_triangle(points[v], points[a], points[b], points[c])) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      tris.push_back({a, b, c});
      poly.erase(poly.begin() + static_cast<long>(i));
      clipped = true;
    }
    if (!clipped) throw GeometryError("ear clipping failed: region is not a simple polygon");
  }
  tris.push_back({poly[0], poly[1], poly[2]});

  for (int p : region.interior) {
    bool placed = false;
    for (std::size_t i = 0; i < tris.size() && !placed; ++i) {
      const auto [a, b, c] = tris[i];
      const int o1 = orient(points[a], points[b], points[p]);
      const int o2 = orient(points[b], points[c], points[p]);
      const int o3 = orient(points[c], points[a], points[p]);
      if (o1 < 0 || o2 < 0 || o3 < 0) continue;
      if (o1 == 0 || o2 == 0 || o3 == 0) throw GeometryError("interior point on a triangulation edge");
      tris[i] = {a, b, p};
      tris.push_back({b, c, p});
      tris.push_back({c, a, p});
      placed = true;
    }
    if (!placed) throw GeometryError("interior point outside the region");
  }

  std::set<Edge> constrained;
  for (std::size_t i = 0; i < region.boundary.size(); ++i)
    constrained.insert(make_edge(region.boundary[i], region.boundary[(i + 1) % region.boundary.size()]));

  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) throw GeometryError("constrained Delaunay flipping did not converge");
    std::map<Edge, std::vector<int>> adjacency;
    for (std::size_t i = 0; i < tris.size(); ++i)
      for (int e = 0; e < 3; ++e) adjacency[make_edge(tris[i][e], tris[i][(e + 1) % 3])].push_back(static_cast<int>(i));
    bool flipped = false;
    for (const auto& [edge, incident] : adjacency) {
      if (incident.size() != 2 || constrained.count(edge)) continue;
      auto other = [&](const std::array<int, 3>& t) {
        for (int v : t)
          if (v != edge.first && v != edge.second) return v;
        return -1;
      };
      const int p = other(tris[incident[0]]);
      const int q = other(tris[incident[1]]);
      const AngleRef at_p{points[p], points[edge.first], points[edge.second]};
      const AngleRef at_q{points[q], points[edge.first], points[edge.second]};
      if (angle_pair_vs_pi(at_p, at_q) <= 0) continue;
      auto ccw = [&](int a, int b, int c) -> std::array<int, 3> {
        return orient(points[a], points[b], points[c]) > 0 ? std::array<int, 3>{a, b, c} : std::array<int, 3>{a, c, b};
      };
      tris[incident[0]] = ccw(p, q, edge.first);
      tris[incident[1]] = ccw(p, q, edge.second);
      flipped = true;
      break;
    }
    if (!flipped) break;
  }
  TriangleList out;
  for (const auto& t : tris) out.push_back(make_triangle(t[0], t[1], t[2]));
  canonicalize(out);
  return out;
}

std::vector<int> RegionTriangulator::key(const Region& region) {
  std::vector<int> k = region.boundary;
  rotate_to_min(k);
  k.push_back(-1);
  std::vector<int> interior = region.interior;
  std::sort(interior.begin(), interior.end());
  k.insert(k.end(), interior.begin(), interior.end());
  return k;
}

std::vector<RegionTriangulator::Split> RegionTriangulator::splits(const Region& region) const {
  const auto& c = region.boundary;
  const std::size_t m = c.size();
  const int u = c[0], v = c[1];
  std::vector<Split> out;

  auto valid_apex = [&](int p) {
    if (orient(points_[u], points_[v], points_[p]) <= 0) return false;
    auto blocked = [&](int w) {
      return w != u && w != v && w != p && in_closed_triangle(points_[w], points_[u], points_[v], points_[p]);
    };
    for (int w : c)
      if (blocked(w)) return false;
    for (int w : region.interior)
      if (blocked(w)) return false;
    for (std::size_t i = 0; i < m; ++i) {
      const int s = c[i], t = c[(i + 1) % m];
      if (segments_conflict(points_[u], points_[p], points_[s], points_[t]) ||
          segments_conflict(points_[p], points_[v], points_[s], points_[t])) return false;
    }
    return true;
  };

  auto distribute = [&](std::vector<Region>& parts, const std::vector<int>& interior) {
    for (int w : interior) {
      bool placed = false;
      for (auto& part : parts) {
        if (part.boundary.size() < 3) continue;
        if (locate_in_polygon(points_[w], region_polygon(points_, part)) > 0) {
          part.interior.push_back(w);
          placed = true;
          break;
        }
      }
      if (!placed) return false;
    }
    return true;
  };

  for (std::size_t j = 2; j < m; ++j) {
    const int p = c[j];
    if (!valid_apex(p)) continue;
    std::vector<Region> parts;
    if (j >= 3) parts.push_back({std::vector<int>(c.begin() + 1, c.begin() + static_cast<long>(j) + 1), {}});
    if (j + 1 < m) {
      Region second{std::vector<int>(c.begin() + static_cast<long>(j), c.end()), {}};
      second.boundary.push_back(c[0]);
      parts.push_back(std::move(second));
    }
    if (!distribute(parts, region.interior)) continue;
    out.push_back({make_triangle(u, v, p), std::move(parts)});
  }
  for (int p : region.interior) {
    if (!valid_apex(p)) continue;
    Region rest;
    rest.boundary.reserve(m + 1);
    rest.boundary.push_back(u);
    rest.boundary.push_back(p);
    rest.boundary.insert(rest.boundary.end(), c.begin() + 1, c.end());
    for (int w : region.interior)
      if (w != p) rest.interior.push_back(w);
    out.push_back({make_triangle(u, v, p), {std::move(rest)}});
  }
  return out;
}

const std::vector<TriangleList>& RegionTriangulator::all(const Region& region) {
  const auto k = key(region);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  std::vector<TriangleList> result;
  if (region.boundary.size() < 3) {
    if (region.interior.empty()) result.emplace_back();
  } else {
    for (const auto& split : splits(region)) {
      std::vector<TriangleList> partial{{split.triangle}};
      for (const auto& part : split.parts) {
        const auto& options = all(part);
        std::vector<TriangleList> combined;
        combined.reserve(partial.size() * options.size());
        for (const auto& left : partial)
          for (const auto& right : options) {
            TriangleList merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            combined.push_back(std::move(merged));
          }
        partial.swap(combined);
        if (partial.empty()) break;
      }
      for (auto& list : partial) {
        canonicalize(list);
        result.push_back(std::move(list));
      }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
  }
  return memo_.emplace(k, std::move(result)).first->second;
}

std::uint64_t RegionTriangulator::count(const Region& region) {
  const auto k = key(region);
  if (auto it = count_memo_.find(k); it != count_memo_.end()) return it->second;
  std::uint64_t total = 0;
  if (region.boundary.size() < 3) {
    total = region.interior.empty() ? 1 : 0;
  } else {
    for (const auto& split : splits(region)) {
      std::uint64_t product = 1;
      for (const auto& part : split.parts) product *= count(part);
      total += product;
    }
  }
  count_memo_.emplace(k, total);
  return total;
}

Region hull_region(const PointSet& base, std::uint32_t vertex_mask) {
  if ((vertex_mask & base.hull_mask()) != base.hull_mask()) throw GeometryError("vertex set must contain the hull");
  Region region{base.hull(), {}};
  for (int i = 0; i < static_cast<int>(base.size()); ++i)
    if (((vertex_mask >> i) & 1U) && !base.on_hull(i)) region.interior.push_back(i);
  return region;
}

std::vector<Triangulation> enumerate_triangulations(const std::shared_ptr<const PointSet>& base, std::uint32_t vertex_mask) {
  RegionTriangulator triangulator(base->points());
  std::vector<Triangulation> out;
  for (const auto& list : triangulator.all(hull_region(*base, vertex_mask))) out.emplace_back(base, list);
  return out;
}

std::uint64_t count_triangulations(const PointSet& base, std::uint32_t vertex_mask) {
  RegionTriangulator triangulator(base.points());
  return triangulator.count(hull_region(base, vertex_mask));
}

}  // namespace hyperdel
