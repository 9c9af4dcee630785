#include "hyperdel/angle_analysis.hpp"

#include <algorithm>
#include <numeric>

namespace hyperdel {

namespace {

void append_angles(std::vector<SortedAngleVector::Entry>& out, const std::array<Point, 3>& t) {
  if (orient(t[0], t[1], t[2]) == 0) throw GeometryError("degenerate triangle in angle vector");
  for (int i = 0; i < 3; ++i) {
    AngleRef angle{t[i], t[(i + 1) % 3], t[(i + 2) % 3]};
    Rational cot = angle.cotangent();
    out.push_back({std::move(angle), std::move(cot)});
  }
}

SortedAngleVector make_sorted(std::vector<SortedAngleVector::Entry> entries) {
  // Larger cotangent means smaller angle.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.cotangent > b.cotangent; });
  return SortedAngleVector(std::move(entries));
}

}  // namespace

SortedAngleVector::SortedAngleVector(std::vector<Entry> entries) : entries_(std::move(entries)) {}

SortedAngleVector sorted_angle_vector(std::span<const std::array<Point, 3>> triangles) {
  std::vector<SortedAngleVector::Entry> entries;
  entries.reserve(3 * triangles.size());
  for (const auto& t : triangles) append_angles(entries, t);
  return make_sorted(std::move(entries));
}

SortedAngleVector sorted_angle_vector(std::span<const Point> points, const TriangleList& triangles) {
  std::vector<std::array<Point, 3>> geometry;
  for (const auto& t : triangles) geometry.push_back({points[t[0]], points[t[1]], points[t[2]]});
  return sorted_angle_vector(geometry);
}

SortedAngleVector sorted_angle_vector(const Hypertriangulation& h) {
  std::vector<std::array<Point, 3>> geometry;
  for (const auto& t : h.triangles()) geometry.push_back(triangle_sums(h.base(), t));
  return sorted_angle_vector(geometry);
}

std::weak_ordering lex_compare(const SortedAngleVector& v, const SortedAngleVector& w) {
  if (v.size() != w.size()) throw GeometryError("incomparable lengths");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto order = compare_cotangents_as_angles(v[i].cotangent, w[i].cotangent);
    if (order != std::weak_ordering::equivalent) return order;
  }
  return std::weak_ordering::equivalent;
}

const AngleRef& min_angle(const SortedAngleVector& v) {
  if (v.empty()) throw GeometryError("empty angle vector");
  return v[0].angle;
}

const char* ordering_name(std::weak_ordering order) {
  if (order == std::weak_ordering::less) return "Less";
  if (order == std::weak_ordering::greater) return "Greater";
  return "Equal";
}

const char* condition_name(LapCondition condition) {
  switch (condition) {
    case LapCondition::WW: return "ww";
    case LapCondition::BB: return "bb";
    case LapCondition::BW: return "bw";
  }
  return "?";
}

std::string LapViolation::describe() const {
  auto tri = [](const LabeledTriangle& t) {
    return "[" + format_label(t.labels[0]) + " | " + format_label(t.labels[1]) + " | " + format_label(t.labels[2]) + "]";
  };
  return std::string(condition_name(condition)) + " edge " + format_label(edge.first) + " / " + format_label(edge.second) +
         " between " + tri(first) + " and " + tri(second) + " witness " + std::to_string(witness);
}

LapReport check_lap(const Hypertriangulation& h) {
  const PointSet& base = h.base();
  struct Side {
    std::size_t triangle;
    Label opposite;
  };
  std::map<std::pair<Label, Label>, std::vector<Side>> edges;
  const auto& triangles = h.triangles();
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto& l = triangles[i].labels;
    for (int e = 0; e < 3; ++e) {
      Label a = l[e], b = l[(e + 1) % 3];
      if (b < a) std::swap(a, b);
      edges[{a, b}].push_back({i, l[(e + 2) % 3]});
    }
  }
  LapReport report;
  for (const auto& [edge, sides] : edges) {
    if (sides.size() != 2) continue;
    ++report.interior_edges;
    const Point a = label_sum(base, edge.first), b = label_sum(base, edge.second);
    const AngleRef p{label_sum(base, sides[0].opposite), a, b};
    const AngleRef q{label_sum(base, sides[1].opposite), a, b};
    const Color cp = classify(triangles[sides[0].triangle]);
    const Color cq = classify(triangles[sides[1].triangle]);
    const LabeledTriangle& tp = triangles[sides[0].triangle];
    const LabeledTriangle& tq = triangles[sides[1].triangle];
    if (cp == Color::White && cq == Color::White) {
      const int s = angle_pair_vs_pi(p, q);
      if (s > 0) report.ww.push_back({LapCondition::WW, edge, tp, tq, s});
    } else if (cp == Color::Black && cq == Color::Black) {
      const int s = angle_pair_vs_pi(p, q);
      if (s < 0) report.bb.push_back({LapCondition::BB, edge, tp, tq, s});
    } else {
      const bool p_black = cp == Color::Black;
      const AngleRef& black = p_black ? p : q;
      const AngleRef& white = p_black ? q : p;
      const auto order = compare_angles(black, white);
      if (order != std::weak_ordering::greater) {
        const int s = order == std::weak_ordering::less ? -1 : 0;
        report.bw.push_back({LapCondition::BW, edge, p_black ? tp : tq, p_black ? tq : tp, s});
      }
    }
  }
  return report;
}

int black_angle_sum_vs_pi(const Hypertriangulation& h, Label vertex) {
  const PointSet& base = h.base();
  std::vector<AngleRef> angles;
  for (const auto& t : h.triangles()) {
    const auto it = std::find(t.labels.begin(), t.labels.end(), vertex);
    if (it == t.labels.end() || classify(t) != Color::Black) continue;
    std::vector<Label> others;
    for (const Label& l : t.labels)
      if (l != vertex) others.push_back(l);
    angles.push_back({label_sum(base, vertex), label_sum(base, others[0]), label_sum(base, others[1])});
  }
  return angle_sum_vs_pi(angles);
}

AngleRanker::AngleRanker(std::span<const Point> points) : n_(static_cast<int>(points.size())) {
  ranks_.assign(static_cast<std::size_t>(n_) * n_ * n_, -1);
  struct Item {
    Rational cot;
    std::size_t slot;
  };
  std::vector<Item> items;
  for (int apex = 0; apex < n_; ++apex)
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) {
        if (apex == a || apex == b) continue;
        const AngleRef angle{points[apex], points[a], points[b]};
        if (!angle.valid()) continue;
        items.push_back({angle.cotangent(), (static_cast<std::size_t>(apex) * n_ + a) * n_ + b});
      }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.cot > y.cot; });
  int rank = -1;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == 0 || items[i].cot != items[i - 1].cot) ++rank;
    ranks_[items[i].slot] = rank;
  }
  rank_count_ = static_cast<std::size_t>(rank + 1);
}

int AngleRanker::rank(int apex, int a, int b) const {
  if (a > b) std::swap(a, b);
  const int r = ranks_[(static_cast<std::size_t>(apex) * n_ + a) * n_ + b];
  if (r < 0) throw GeometryError("degenerate angle has no rank");
  return r;
}

void AngleRanker::add(Histogram& h, const Triangle& t) const {
  ++h[rank(t[0], t[1], t[2])];
  ++h[rank(t[1], t[0], t[2])];
  ++h[rank(t[2], t[0], t[1])];
}

void AngleRanker::add(Histogram& h, const TriangleList& triangles) const {
  for (const auto& t : triangles) add(h, t);
}

void AngleRanker::remove(Histogram& h, const TriangleList& triangles) const {
  for (const auto& t : triangles) {
    --h[rank(t[0], t[1], t[2])];
    --h[rank(t[1], t[0], t[2])];
    --h[rank(t[2], t[0], t[1])];
  }
}

AngleRanker::Histogram AngleRanker::histogram(const TriangleList& triangles) const {
  Histogram h = empty_histogram();
  add(h, triangles);
  return h;
}

std::weak_ordering AngleRanker::compare(const Histogram& v, const Histogram& w) {
  if (v.size() != w.size() ||
      std::accumulate(v.begin(), v.end(), std::uint64_t{0}) != std::accumulate(w.begin(), w.end(), std::uint64_t{0}))
    throw GeometryError("incomparable lengths");
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (v[r] == w[r]) continue;
    // More copies of the smaller angle means the sorted vector is smaller there.
    return v[r] > w[r] ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  return std::weak_ordering::equivalent;
}

int AngleRanker::min_rank(const Histogram& h) {
  for (std::size_t r = 0; r < h.size(); ++r)
    if (h[r] != 0) return static_cast<int>(r);
  return -1;
}

}  // namespace hyperdel
