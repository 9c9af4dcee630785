#pragma once

#include "hyperdel/triangulation.hpp"

#include <compare>
#include <functional>
#include <limits>
#include <stdexcept>

namespace hyperdel {

/// A k-subset of point indices. Its geometric position is the average of the
/// points; most code works with the sum, which is k times the position and
/// avoids the division.
struct Label {
  std::uint32_t mask = 0;

  [[nodiscard]] int level() const;
  [[nodiscard]] bool contains(int i) const { return (mask >> i) & 1U; }
  [[nodiscard]] std::vector<int> indices() const;

  friend auto operator<=>(const Label&, const Label&) = default;
};

Label make_label(std::initializer_list<int> indices);
Label make_label(std::span<const int> indices);
/// "0,3,5"
std::string format_label(Label label);

Point label_sum(const PointSet& base, Label label);
Point label_position(const PointSet& base, Label label);

enum class Color { Black, White };
const char* color_name(Color color);

/// Three labels of one level, stored sorted.
struct LabeledTriangle {
  std::array<Label, 3> labels;

  [[nodiscard]] int level() const { return labels[0].level(); }
  friend auto operator<=>(const LabeledTriangle&, const LabeledTriangle&) = default;
};

LabeledTriangle make_labeled(Label a, Label b, Label c);

/// Black iff the triple intersection has k-2 elements, White iff k-1.
/// Throws GeometryError for any other size.
Color classify(const LabeledTriangle& t);

/// [Ya],[Yb],[Yc] -> [Yab],[Yac],[Ybc]. Throws GeometryError on black input.
LabeledTriangle age_triangle(const LabeledTriangle& t);
/// [Yab],[Yac],[Ybc] -> [Ya],[Yb],[Yc]. Throws GeometryError on white input.
LabeledTriangle inverse_age_triangle(const LabeledTriangle& t);

/// Level-2 black image {ab},{ac},{bc} of a level-1 triangle.
LabeledTriangle aged_black(const Triangle& abc);
/// Level-2 white triangle {xu},{xv},{xw} of a triangle uvw in the white region of x.
LabeledTriangle white_in_region(int x, const Triangle& uvw);

/// Label sums of the three corners, counterclockwise.
std::array<Point, 3> triangle_sums(const PointSet& base, const LabeledTriangle& t);

class Hypertriangulation {
 public:
  /// Triangles are sorted and deduplicated.
  Hypertriangulation(std::shared_ptr<const PointSet> base, int level, std::vector<LabeledTriangle> triangles);

  [[nodiscard]] const PointSet& base() const { return *base_; }
  [[nodiscard]] const std::shared_ptr<const PointSet>& base_ptr() const { return base_; }
  [[nodiscard]] int level() const { return level_; }
  [[nodiscard]] const std::vector<LabeledTriangle>& triangles() const { return triangles_; }
  [[nodiscard]] std::size_t size() const { return triangles_.size(); }
  [[nodiscard]] std::vector<LabeledTriangle> of_color(Color color) const;
  [[nodiscard]] std::vector<Label> vertices() const;

  friend bool operator==(const Hypertriangulation& a, const Hypertriangulation& b) {
    return a.level_ == b.level_ && a.triangles_ == b.triangles_;
  }

 private:
  std::shared_ptr<const PointSet> base_;
  int level_;
  std::vector<LabeledTriangle> triangles_;
};

struct TriangleCounts {
  std::size_t black = 0;
  std::size_t white = 0;

  [[nodiscard]] std::size_t total() const { return black + white; }
  friend bool operator==(const TriangleCounts&, const TriangleCounts&) = default;
};

TriangleCounts triangle_counts(const Hypertriangulation& h);

/// Violations grouped by clause. Empty everywhere iff valid.
struct HyperValidation {
  std::vector<std::string> edge_labels;  // |I n J| = k-1 on every edge
  std::vector<std::string> one_label;    // one label per position
  std::vector<std::string> tiling;       // edge-to-edge tiling of conv(A^(k))
  std::vector<std::string> color;        // triple intersection k-2 or k-1

  [[nodiscard]] bool ok() const { return edge_labels.empty() && one_label.empty() && tiling.empty() && color.empty(); }
  [[nodiscard]] std::vector<std::string> all() const;
};

HyperValidation validate_hypertriangulation(const Hypertriangulation& h);

/// conv of all k-fold label sums (k times conv(A^(k))), counterclockwise.
std::vector<Point> level_hull_sums(const PointSet& base, int k);

/// A triangulation as a level-1 hypertriangulation (every triangle white).
Hypertriangulation level1_of(const Triangulation& p);

/// Triangles from every triple whose circumcircle holds k-2 (black) or k-1 (white) points.
Hypertriangulation order_k_delaunay(std::shared_ptr<const PointSet> base, int k);

// ---------------------------------------------------------------------------
// Level 2

/// One simple piece of the white region of `owner`. Interior points are the
/// omitted points of a partial triangulation that land strictly inside it.
struct WhitePiece {
  int owner;
  Region region;
};

/// White pieces of every vertex of P, in vertex order.
std::vector<WhitePiece> level2_white_pieces(const Triangulation& p);

/// The level-1 picture of a level-2 hypertriangulation: P plus a triangulation of every white piece.
struct Phi2 {
  Triangulation black;
  std::vector<WhitePiece> pieces;
  std::vector<TriangleList> white;  // parallel to pieces

  /// Level-1 triangles of all white pieces of x.
  [[nodiscard]] TriangleList white_of(int x) const;
  /// Black triangles followed by all white triangles.
  [[nodiscard]] TriangleList all_triangles() const;
};

Hypertriangulation level2_from(const Triangulation& p, const std::vector<WhitePiece>& pieces,
                               const std::vector<const TriangleList*>& white);

struct FResult {
  Phi2 phi;
  Hypertriangulation level2;
};

/// Black triangles of P plus the constrained Delaunay triangulation of each white piece.
FResult f_of(const Triangulation& p);

/// The level-1 triangulation whose aged triangles are the black triangles of H.
/// Throws GeometryError when they do not form one.
Triangulation inverse_aging(const Hypertriangulation& h);

class EnumerationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// HYPERDEL_MAX_CELLS if set to a positive integer, otherwise `fallback`.
std::size_t max_cells_from_env(std::size_t fallback = kUnlimited);

/// A level-1 triangulation with every option for each of its white pieces.
struct Level2Frame {
  const Triangulation* black = nullptr;
  const std::vector<WhitePiece>* pieces = nullptr;
  std::vector<const std::vector<TriangleList>*> options;  // parallel to pieces

  [[nodiscard]] std::uint64_t member_count() const;
};

using Level2Choice = std::vector<std::size_t>;

Hypertriangulation assemble_level2(const Level2Frame& frame, const Level2Choice& choice);

/// Visits every frame: complete triangulations only, or every vertex set containing the hull.
void for_each_level2_frame(const std::shared_ptr<const PointSet>& base, bool maximal,
                           const std::function<void(const Level2Frame&)>& visit);

/// Odometer over the choices of a frame; the visitor returns false to stop.
bool for_each_choice(const Level2Frame& frame, const std::function<bool(const Level2Choice&)>& visit);

std::vector<Hypertriangulation> enumerate_complete_level2(const std::shared_ptr<const PointSet>& base,
                                                          std::size_t limit = kUnlimited);
std::vector<Hypertriangulation> enumerate_maximal_level2(const std::shared_ptr<const PointSet>& base,
                                                         std::size_t limit = kUnlimited);
std::uint64_t count_level2(const std::shared_ptr<const PointSet>& base, bool maximal);

// ---------------------------------------------------------------------------
// Level 3, convex position

/// Every level-3 hypertriangulation aged from a complete level-2 one.
/// Throws GeometryError unless A is in convex position.
std::vector<Hypertriangulation> enumerate_level3_convex(const std::shared_ptr<const PointSet>& base,
                                                        std::size_t limit = kUnlimited);

// ---------------------------------------------------------------------------
// Independent exhaustive enumeration

/// Every level-k hypertriangulation, found by tiling conv(A^(k)) directly with
/// label triangles that obey the edge condition. Interior label positions are
/// optional vertices. Throws GeometryError if two labels share a position.
std::vector<Hypertriangulation> enumerate_all_hypertriangulations(const std::shared_ptr<const PointSet>& base, int k,
                                                                  std::size_t limit = kUnlimited);

/// Every triangle of `fine` lies in a triangle of `coarse`, and the two differ.
bool subdivides(const Hypertriangulation& fine, const Hypertriangulation& coarse);

/// Members not subdivided by any other member.
std::vector<Hypertriangulation> maximal_members(const std::vector<Hypertriangulation>& family);

}  // namespace hyperdel
