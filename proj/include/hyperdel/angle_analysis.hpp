#pragma once

#include "hyperdel/hypertri.hpp"

namespace hyperdel {

/// Every angle of a set of triangles, sorted non-decreasing. Each entry keeps
/// its cotangent so comparisons never recompute it.
class SortedAngleVector {
 public:
  struct Entry {
    AngleRef angle;
    Rational cotangent;
  };

  SortedAngleVector() = default;
  explicit SortedAngleVector(std::vector<Entry> entries);

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const Entry& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Throws GeometryError on a degenerate triangle.
SortedAngleVector sorted_angle_vector(std::span<const std::array<Point, 3>> triangles);
SortedAngleVector sorted_angle_vector(std::span<const Point> points, const TriangleList& triangles);
SortedAngleVector sorted_angle_vector(const Hypertriangulation& h);

/// First differing angle decides. Throws GeometryError("incomparable lengths").
std::weak_ordering lex_compare(const SortedAngleVector& v, const SortedAngleVector& w);

/// Smallest angle. Throws GeometryError on an empty vector.
const AngleRef& min_angle(const SortedAngleVector& v);

const char* ordering_name(std::weak_ordering order);

enum class LapCondition { WW, BB, BW };
const char* condition_name(LapCondition condition);

struct LapViolation {
  LapCondition condition;
  std::pair<Label, Label> edge;
  LabeledTriangle first;   // black one for BW
  LabeledTriangle second;  // white one for BW
  /// WW/BB: sign of (sum of opposite angles - pi). BW: sign of (black - white).
  int witness;

  [[nodiscard]] std::string describe() const;
};

struct LapReport {
  std::vector<LapViolation> ww;
  std::vector<LapViolation> bb;
  std::vector<LapViolation> bw;
  std::size_t interior_edges = 0;

  [[nodiscard]] bool holds() const { return ww.empty() && bb.empty() && bw.empty(); }
  [[nodiscard]] std::size_t violation_count() const { return ww.size() + bb.size() + bw.size(); }
};

/// Tests every edge shared by two triangles; boundary edges are skipped.
LapReport check_lap(const Hypertriangulation& h);

/// Sign of (sum of black angles at `vertex` - pi), decided exactly.
int black_angle_sum_vs_pi(const Hypertriangulation& h, Label vertex);

/// Dense ranks of all angles spanned by triples of a point set; equal angles share a rank.
/// Lets whole families of level-1 triangle sets be compared through rank histograms.
class AngleRanker {
 public:
  using Histogram = std::vector<std::uint32_t>;

  explicit AngleRanker(std::span<const Point> points);

  [[nodiscard]] std::size_t rank_count() const { return rank_count_; }
  /// Rank of the angle at `apex` in the triangle apex, a, b.
  [[nodiscard]] int rank(int apex, int a, int b) const;
  [[nodiscard]] Histogram empty_histogram() const { return Histogram(rank_count_, 0); }
  void add(Histogram& h, const Triangle& t) const;
  void add(Histogram& h, const TriangleList& triangles) const;
  void remove(Histogram& h, const TriangleList& triangles) const;
  [[nodiscard]] Histogram histogram(const TriangleList& triangles) const;

  /// Same answer as lex_compare on the sorted vectors the histograms count.
  static std::weak_ordering compare(const Histogram& v, const Histogram& w);
  /// Smallest rank present, or -1.
  static int min_rank(const Histogram& h);

 private:
  int n_;
  std::size_t rank_count_ = 0;
  std::vector<int> ranks_;  // [apex][a][b], a < b
};

}  // namespace hyperdel
