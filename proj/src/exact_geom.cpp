#include "hyperdel/exact_geom.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hyperdel {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  if (!text.empty() && text.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool point_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Point operator+(const Point& a, const Point& b) { return {Rational(a.x + b.x), Rational(a.y + b.y)}; }
Point operator-(const Point& a, const Point& b) { return {Rational(a.x - b.x), Rational(a.y - b.y)}; }
Point scaled(const Point& p, const Rational& factor) { return {Rational(p.x * factor), Rational(p.y * factor)}; }

Rational cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
Rational dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

int sign(const Rational& value) {
  const int s = sgn(value);
  return (s > 0) - (s < 0);
}

int orient(const Point& a, const Point& b, const Point& c) {
  const Rational det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sign(det);
}

int in_circle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o = orient(a, b, c);
  if (o == 0) throw GeometryError("collinear circumcircle");
  const Rational adx = a.x - d.x, ady = a.y - d.y;
  const Rational bdx = b.x - d.x, bdy = b.y - d.y;
  const Rational cdx = c.x - d.x, cdy = c.y - d.y;
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  const Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                       clift * (adx * bdy - bdx * ady);
  return sign(det) * o;
}

Rational AngleRef::cotangent() const {
  const Point u = ray1 - apex;
  const Point v = ray2 - apex;
  Rational c = cross(u, v);
  if (c == 0) throw GeometryError("degenerate angle");
  if (c < 0) c = -c;
  return dot(u, v) / c;
}

std::weak_ordering compare_cotangents_as_angles(const Rational& cot_p, const Rational& cot_q) {
  // cot is strictly decreasing on (0, pi).
  if (cot_p > cot_q) return std::weak_ordering::less;
  if (cot_p < cot_q) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::weak_ordering compare_angles(const AngleRef& p, const AngleRef& q) {
  return compare_cotangents_as_angles(p.cotangent(), q.cotangent());
}

int angle_pair_vs_pi(const AngleRef& p, const AngleRef& q) {
  return -sign(Rational(p.cotangent() + q.cotangent()));
}

int angle_sum_vs_pi(std::span<const AngleRef> angles) {
  // Running product re + i*im of unit-free rotations; half_turns counts how
  // many multiples of pi the partial sum has reached.
  Rational re = 1, im = 0;
  int half_turns = 0;
  for (const AngleRef& a : angles) {
    Point u = a.ray1 - a.apex;
    Point v = a.ray2 - a.apex;
    const int o = sign(cross(u, v));
    if (o == 0) throw GeometryError("degenerate angle");
    if (o < 0) std::swap(u, v);
    // conj(u) * v has argument equal to the angle from u to v.
    const Rational zr = u.x * v.x + u.y * v.y;
    const Rational zi = u.x * v.y - u.y * v.x;
    Rational nr = re * zr - im * zi;
    Rational ni = re * zi + im * zr;
    const int expected = (half_turns % 2 == 0) ? 1 : -1;
    const int s = sign(ni);
    if (s == 0) {
      ++half_turns;
    } else if (s != expected) {
      ++half_turns;
    }
    Rational scale = abs(nr) > abs(ni) ? Rational(abs(nr)) : Rational(abs(ni));
    re = nr / scale;
    im = ni / scale;
  }
  if (half_turns == 0) return -1;
  if (half_turns == 1 && im == 0) return 0;
  return 1;
}

double approx(const Rational& value) { return value.get_d(); }

double approx_degrees(const AngleRef& angle) {
  const double ux = approx(angle.ray1.x - angle.apex.x), uy = approx(angle.ray1.y - angle.apex.y);
  const double vx = approx(angle.ray2.x - angle.apex.x), vy = approx(angle.ray2.y - angle.apex.y);
  return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy) * 180.0 / std::acos(-1.0);
}

Rational signed_area2(std::span<const Point> polygon) {
  Rational sum = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) sum += cross(polygon[i], polygon[(i + 1) % n]);
  return sum;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool strictly_on_segment(const Point& p, const Point& a, const Point& b) {
  return !(p == a) && !(p == b) && on_segment(p, a, b);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

bool segments_conflict(const Point& a, const Point& b, const Point& c, const Point& d) {
  if ((a == c && b == d) || (a == d && b == c)) return false;
  const bool shares = a == c || a == d || b == c || b == d;
  if (!shares) return segments_intersect(a, b, c, d);
  const Point& common = (a == c || a == d) ? a : b;
  const Point& far1 = common == a ? b : a;
  const Point& far2 = common == c ? d : c;
  const Point u = far1 - common;
  const Point v = far2 - common;
  return sign(cross(u, v)) == 0 && sign(dot(u, v)) > 0;
}

bool in_closed_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
  const int o1 = orient(a, b, p), o2 = orient(b, c, p), o3 = orient(c, a, p);
  return (o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0);
}

int locate_in_polygon(const Point& p, std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[i];
    const Point& b = polygon[j];
    if (on_segment(p, a, b)) return 0;
    if ((a.y > p.y) != (b.y > p.y)) {
      // x-coordinate of the crossing compared with p.x, without division.
      const Rational lhs = (p.x - a.x) * (b.y - a.y);
      const Rational rhs = (b.x - a.x) * (p.y - a.y);
      const bool right = (b.y > a.y) ? lhs < rhs : lhs > rhs;
      if (right) inside = !inside;
    }
  }
  return inside ? 1 : -1;
}

std::vector<Point> clip_to_convex(std::span<const Point> subject, std::span<const Point> convex_clip) {
  std::vector<Point> output(subject.begin(), subject.end());
  const std::size_t m = convex_clip.size();
  for (std::size_t e = 0; e < m && !output.empty(); ++e) {
    const Point& a = convex_clip[e];
    const Point& b = convex_clip[(e + 1) % m];
    std::vector<Point> input;
    input.swap(output);
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& cur = input[i];
      const Point& prev = input[(i + n - 1) % n];
      const int sc = orient(a, b, cur);
      const int sp = orient(a, b, prev);
      if (sc >= 0) {
        if (sp < 0) {
          // enter: intersection of prev->cur with line ab
          const Rational dc = cross(b - a, cur - a);
          const Rational dp = cross(b - a, prev - a);
          const Rational t = dp / (dp - dc);
          output.push_back(prev + scaled(cur - prev, t));
        }
        output.push_back(cur);
      } else if (sp >= 0) {
        if (sp > 0) {
          const Rational dc = cross(b - a, cur - a);
          const Rational dp = cross(b - a, prev - a);
          const Rational t = dp / (dp - dc);
          output.push_back(prev + scaled(cur - prev, t));
        }
      }
    }
  }
  return output;
}

bool triangle_interiors_overlap(std::span<const Point, 3> t, std::span<const Point, 3> u) {
  // Two convex polygons have disjoint interiors iff some edge line weakly
  // separates them.
  auto separated_by_edges_of = [](std::span<const Point, 3> p, std::span<const Point, 3> q) {
    const int orientation = orient(p[0], p[1], p[2]);
    for (int e = 0; e < 3; ++e) {
      const Point& a = p[e];
      const Point& b = p[(e + 1) % 3];
      bool all_outside = true;
      for (int i = 0; i < 3 && all_outside; ++i) {
        if (orient(a, b, q[i]) * orientation > 0) all_outside = false;
      }
      if (all_outside) return true;
    }
    return false;
  };
  return !separated_by_edges_of(t, u) && !separated_by_edges_of(u, t);
}

std::vector<int> convex_hull(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw GeometryError("convex hull needs at least three points");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return point_less(points[a], points[b]); });
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && orient(points[hull[k - 2]], points[hull[k - 1]], points[order[i]]) <= 0) --k;
    hull[k++] = order[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && orient(points[hull[k - 2]], points[hull[k - 1]], points[order[i]]) <= 0) --k;
    hull[k++] = order[i];
  }
  hull.resize(std::max(0, k - 1));
  if (hull.size() < 3) throw GeometryError("all points collinear");
  std::rotate(hull.begin(), std::min_element(hull.begin(), hull.end()), hull.end());
  return hull;
}

std::string GenericityViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::TooFewPoints: out << "need at least 3 points"; break;
    case Kind::DuplicatePoint: out << "duplicate point"; break;
    case Kind::CollinearTriple: out << "collinear triple"; break;
    case Kind::CocircularQuadruple: out << "cocircular quadruple"; break;
  }
  if (!indices.empty()) {
    out << " {";
    for (std::size_t i = 0; i < indices.size(); ++i) out << (i ? "," : "") << indices[i];
    out << "}";
  }
  return out.str();
}

std::optional<int> PointSet::index_of(const Point& p) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == p) return static_cast<int>(i);
  }
  return std::nullopt;
}

PointSet PointSet::from_points(std::vector<Point> points) {
  auto result = validate_generic(std::move(points));
  if (auto* violation = std::get_if<GenericityViolation>(&result)) throw GeometryError(violation->describe());
  return std::get<PointSet>(std::move(result));
}

std::variant<PointSet, GenericityViolation> validate_generic(std::vector<Point> points) {
  using Kind = GenericityViolation::Kind;
  const int n = static_cast<int>(points.size());
  if (n < 3) return GenericityViolation{Kind::TooFewPoints, {}};
  if (points.size() > kMaxPoints) {
    throw GeometryError("at most " + std::to_string(kMaxPoints) + " points are supported");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points[i] == points[j]) return GenericityViolation{Kind::DuplicatePoint, {i, j}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (orient(points[i], points[j], points[k]) == 0) return GenericityViolation{Kind::CollinearTriple, {i, j, k}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          if (in_circle(points[i], points[j], points[k], points[l]) == 0)
            return GenericityViolation{Kind::CocircularQuadruple, {i, j, k, l}};
  PointSet set;
  set.points_ = std::move(points);
  set.hull_ = convex_hull(set.points_);
  for (int h : set.hull_) set.hull_mask_ |= std::uint32_t{1} << h;
  return set;
}

}  // namespace hyperdel
