#pragma once

// Exact rational planar kernel. Every predicate here is decided with GMP
// rationals; nothing in this header touches floating point except the
// display helpers at the bottom.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hyperdel {

using Rational = mpq_class;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (q > 0). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
/// Canonical "p/q" form; integers are written without a denominator.
std::string format_rational(const Rational& value);

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Point(long px, long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Lexicographic (x, then y) order, used for canonical sorting.
bool point_less(const Point& a, const Point& b);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point scaled(const Point& p, const Rational& factor);

Rational cross(const Point& u, const Point& v);
Rational dot(const Point& u, const Point& v);

int sign(const Rational& value);

/// +1 counterclockwise, 0 collinear, -1 clockwise.
int orient(const Point& a, const Point& b, const Point& c);

/// +1 iff d is strictly inside the circumcircle of abc, 0 if cocircular,
/// -1 if strictly outside. Independent of the orientation of abc.
/// Throws GeometryError("collinear circumcircle") for degenerate abc.
int in_circle(const Point& a, const Point& b, const Point& c, const Point& d);

/// The angle at `apex` between the rays towards `ray1` and `ray2`, in (0, pi).
struct AngleRef {
  Point apex;
  Point ray1;
  Point ray2;

  /// (u . v) / |u x v|, strictly decreasing in the angle on (0, pi).
  [[nodiscard]] Rational cotangent() const;
  [[nodiscard]] bool valid() const { return orient(apex, ray1, ray2) != 0; }
};

/// Orders angles by their true measure.
std::weak_ordering compare_angles(const AngleRef& p, const AngleRef& q);
std::weak_ordering compare_cotangents_as_angles(const Rational& cot_p, const Rational& cot_q);

/// Sign of (angle p + angle q - pi).
int angle_pair_vs_pi(const AngleRef& p, const AngleRef& q);

/// Sign of (sum of the angles - pi), decided exactly by multiplying the
/// Gaussian-rational rotations conj(u) * v and counting half turns.
int angle_sum_vs_pi(std::span<const AngleRef> angles);

/// Degrees, for display only.
double approx_degrees(const AngleRef& angle);
double approx(const Rational& value);

// ---------------------------------------------------------------------------
// Polygons

/// Twice the signed area (positive for counterclockwise polygons).
Rational signed_area2(std::span<const Point> polygon);

/// -1 outside, 0 on the boundary, +1 strictly inside. Works for any simple polygon.
int locate_in_polygon(const Point& p, std::span<const Point> polygon);

/// True iff p lies on the closed segment ab.
bool on_segment(const Point& p, const Point& a, const Point& b);
/// True iff p lies on the segment ab but is neither endpoint.
bool strictly_on_segment(const Point& p, const Point& a, const Point& b);

/// Closed segments ab and cd share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Closed segments ab and cd meet somewhere other than a shared endpoint.
/// Identical segments do not conflict.
bool segments_conflict(const Point& a, const Point& b, const Point& c, const Point& d);

/// p lies in the closed nondegenerate triangle abc (either orientation).
bool in_closed_triangle(const Point& p, const Point& a, const Point& b, const Point& c);

/// Sutherland-Hodgman clip of an arbitrary simple polygon against a convex
/// counterclockwise polygon. Degenerate bridges may remain in the output.
std::vector<Point> clip_to_convex(std::span<const Point> subject, std::span<const Point> convex_clip);

/// True iff the two nondegenerate triangles share interior points.
bool triangle_interiors_overlap(std::span<const Point, 3> t, std::span<const Point, 3> u);

/// Indices of the extreme points, counterclockwise, starting at the smallest index.
/// Throws GeometryError when fewer than three points are not all collinear.
std::vector<int> convex_hull(std::span<const Point> points);

// ---------------------------------------------------------------------------
// Generic point sets

struct GenericityViolation {
  enum class Kind { TooFewPoints, DuplicatePoint, CollinearTriple, CocircularQuadruple };
  Kind kind;
  std::vector<int> indices;

  [[nodiscard]] std::string describe() const;
};

/// Distinct points, no three collinear, no four cocircular; hull is counterclockwise.
class PointSet {
 public:
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }
  [[nodiscard]] std::span<const Point> points() const { return points_; }
  [[nodiscard]] const std::vector<int>& hull() const { return hull_; }
  [[nodiscard]] std::uint32_t hull_mask() const { return hull_mask_; }
  [[nodiscard]] std::uint32_t all_mask() const { return (std::uint32_t{1} << size()) - 1; }
  [[nodiscard]] bool on_hull(int i) const { return (hull_mask_ >> i) & 1U; }
  [[nodiscard]] bool convex_position() const { return hull_.size() == points_.size(); }
  [[nodiscard]] std::optional<int> index_of(const Point& p) const;

  /// Throws GeometryError describing the first violation.
  static PointSet from_points(std::vector<Point> points);

 private:
  friend std::variant<PointSet, GenericityViolation> validate_generic(std::vector<Point> points);
  PointSet() = default;

  std::vector<Point> points_;
  std::vector<int> hull_;
  std::uint32_t hull_mask_ = 0;
};

inline constexpr std::size_t kMaxPoints = 24;

/// Either a PointSet or the first violating tuple (lexicographic in the indices).
std::variant<PointSet, GenericityViolation> validate_generic(std::vector<Point> points);

}  // namespace hyperdel
