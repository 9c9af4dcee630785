#include "hyperdel/hypertri.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>

namespace hyperdel {

namespace {

std::uint32_t bit(int i) { return std::uint32_t{1} << i; }

int lowest(std::uint32_t mask) { return std::countr_zero(mask); }

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return point_less(a, b); }
};

// All k-subsets of {0..n-1} as masks, increasing.
std::vector<std::uint32_t> k_subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k <= 0 || k > n) return out;
  std::uint32_t m = (std::uint32_t{1} << k) - 1;
  const std::uint32_t limit = std::uint32_t{1} << n;
  while (m < limit) {
    out.push_back(m);
    const std::uint32_t c = m & -m;
    const std::uint32_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

std::string describe(const LabeledTriangle& t) {
  return "[" + format_label(t.labels[0]) + " | " + format_label(t.labels[1]) + " | " + format_label(t.labels[2]) + "]";
}

std::pair<Label, Label> label_edge(Label a, Label b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Bounding boxes for the overlap prefilter.
struct Box {
  Rational xmin, xmax, ymin, ymax;
};

Box box_of(const std::array<Point, 3>& t) {
  Box b{t[0].x, t[0].x, t[0].y, t[0].y};
  for (const auto& p : t) {
    if (p.x < b.xmin) b.xmin = p.x;
    if (p.x > b.xmax) b.xmax = p.x;
    if (p.y < b.ymin) b.ymin = p.y;
    if (p.y > b.ymax) b.ymax = p.y;
  }
  return b;
}

bool boxes_overlap(const Box& a, const Box& b) {
  return a.xmin < b.xmax && b.xmin < a.xmax && a.ymin < b.ymax && b.ymin < a.ymax;
}

}  // namespace

int Label::level() const { return std::popcount(mask); }

std::vector<int> Label::indices() const {
  std::vector<int> out;
  for (std::uint32_t m = mask; m != 0; m &= m - 1) out.push_back(lowest(m));
  return out;
}

Label make_label(std::span<const int> indices) {
  Label label;
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(kMaxPoints)) throw GeometryError("label index out of range");
    if (label.contains(i)) throw GeometryError("label repeats index " + std::to_string(i));
    label.mask |= bit(i);
  }
  return label;
}

Label make_label(std::initializer_list<int> indices) {
  return make_label(std::span<const int>(indices.begin(), indices.size()));
}

std::string format_label(Label label) {
  std::string out;
  for (int i : label.indices()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

Point label_sum(const PointSet& base, Label label) {
  Point sum(0, 0);
  for (int i : label.indices()) {
    if (i >= static_cast<int>(base.size())) throw GeometryError("label index outside the point set");
    sum = sum + base[i];
  }
  return sum;
}

Point label_position(const PointSet& base, Label label) {
  return scaled(label_sum(base, label), Rational(1, label.level()));
}

const char* color_name(Color color) { return color == Color::Black ? "black" : "white"; }

LabeledTriangle make_labeled(Label a, Label b, Label c) {
  LabeledTriangle t{{a, b, c}};
  std::sort(t.labels.begin(), t.labels.end());
  return t;
}

Color classify(const LabeledTriangle& t) {
  const int k = t.labels[0].level();
  if (t.labels[1].level() != k || t.labels[2].level() != k) throw GeometryError("labels of different levels " + describe(t));
  const int common = std::popcount(t.labels[0].mask & t.labels[1].mask & t.labels[2].mask);
  if (common == k - 2) return Color::Black;
  if (common == k - 1) return Color::White;
  throw GeometryError("triple intersection of size " + std::to_string(common) + " in " + describe(t));
}

LabeledTriangle age_triangle(const LabeledTriangle& t) {
  if (classify(t) != Color::White) throw GeometryError("only white triangles age");
  const std::uint32_t y = t.labels[0].mask & t.labels[1].mask & t.labels[2].mask;
  const std::uint32_t a = t.labels[0].mask & ~y, b = t.labels[1].mask & ~y, c = t.labels[2].mask & ~y;
  return make_labeled({y | a | b}, {y | a | c}, {y | b | c});
}

LabeledTriangle inverse_age_triangle(const LabeledTriangle& t) {
  if (classify(t) != Color::Black) throw GeometryError("only black triangles have an inverse image");
  const std::uint32_t x = t.labels[0].mask & t.labels[1].mask & t.labels[2].mask;
  const std::uint32_t all = t.labels[0].mask | t.labels[1].mask | t.labels[2].mask;
  std::array<Label, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = {x | (all & ~t.labels[i].mask)};
  return make_labeled(out[0], out[1], out[2]);
}

LabeledTriangle aged_black(const Triangle& abc) {
  const auto [a, b, c] = abc;
  return make_labeled({bit(a) | bit(b)}, {bit(a) | bit(c)}, {bit(b) | bit(c)});
}

LabeledTriangle white_in_region(int x, const Triangle& uvw) {
  const auto [u, v, w] = uvw;
  return make_labeled({bit(x) | bit(u)}, {bit(x) | bit(v)}, {bit(x) | bit(w)});
}

std::array<Point, 3> triangle_sums(const PointSet& base, const LabeledTriangle& t) {
  std::array<Point, 3> p{label_sum(base, t.labels[0]), label_sum(base, t.labels[1]), label_sum(base, t.labels[2])};
  if (orient(p[0], p[1], p[2]) < 0) std::swap(p[1], p[2]);
  return p;
}

Hypertriangulation::Hypertriangulation(std::shared_ptr<const PointSet> base, int level,
                                       std::vector<LabeledTriangle> triangles)
    : base_(std::move(base)), level_(level), triangles_(std::move(triangles)) {
  std::sort(triangles_.begin(), triangles_.end());
  triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());
}

std::vector<LabeledTriangle> Hypertriangulation::of_color(Color color) const {
  std::vector<LabeledTriangle> out;
  for (const auto& t : triangles_)
    if (classify(t) == color) out.push_back(t);
  return out;
}

std::vector<Label> Hypertriangulation::vertices() const {
  std::vector<Label> out;
  for (const auto& t : triangles_) out.insert(out.end(), t.labels.begin(), t.labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TriangleCounts triangle_counts(const Hypertriangulation& h) {
  TriangleCounts counts;
  for (const auto& t : h.triangles()) (classify(t) == Color::Black ? counts.black : counts.white)++;
  return counts;
}

std::vector<std::string> HyperValidation::all() const {
  std::vector<std::string> out;
  for (const auto* group : {&edge_labels, &one_label, &tiling, &color}) out.insert(out.end(), group->begin(), group->end());
  return out;
}

std::vector<Point> level_hull_sums(const PointSet& base, int k) {
  const int n = static_cast<int>(base.size());
  if (k < 1 || k > n - 1) throw GeometryError("level must lie in 1..n-1");
  std::vector<Point> sums;
  for (std::uint32_t m : k_subsets(n, k)) sums.push_back(label_sum(base, {m}));
  std::vector<Point> hull;
  for (int i : convex_hull(sums)) hull.push_back(sums[i]);
  return hull;
}

HyperValidation validate_hypertriangulation(const Hypertriangulation& h) {
  HyperValidation report;
  const PointSet& base = h.base();
  const int k = h.level();
  const int n = static_cast<int>(base.size());
  if (k < 1 || k > n - 1) {
    report.tiling.push_back("level " + std::to_string(k) + " outside 1..n-1");
    return report;
  }
  std::vector<std::array<Point, 3>> geometry;
  for (const auto& t : h.triangles()) {
    bool usable = true;
    for (const Label& l : t.labels)
      if (l.level() != k || (l.mask >> n) != 0) usable = false;
    if (!usable) {
      report.color.push_back("labels of the wrong level or outside A in " + describe(t));
      continue;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::popcount(t.labels[i].mask & t.labels[j].mask) != k - 1)
          report.edge_labels.push_back("edge " + format_label(t.labels[i]) + " / " + format_label(t.labels[j]) + " of " +
                                       describe(t));
    try {
      classify(t);
    } catch (const GeometryError& e) {
      report.color.push_back(e.what());
    }
    auto sums = triangle_sums(base, t);
    if (orient(sums[0], sums[1], sums[2]) == 0) {
      report.tiling.push_back("degenerate triangle " + describe(t));
      continue;
    }
    geometry.push_back(std::move(sums));
  }
  if (!report.ok()) return report;

  // One label per position.
  std::map<Point, Label, PointLess> at;
  for (const Label& l : h.vertices()) {
    const auto [it, inserted] = at.emplace(label_sum(base, l), l);
    if (!inserted && it->second != l)
      report.one_label.push_back("labels " + format_label(it->second) + " and " + format_label(l) + " share a position");
  }

  // Tiling.
  const auto hull = level_hull_sums(base, k);
  Rational area = 0;
  for (const auto& g : geometry) area += signed_area2(g);
  if (area != signed_area2(hull))
    report.tiling.push_back("area " + format_rational(area) + " differs from hull area " +
                            format_rational(signed_area2(hull)) + " (in label-sum units)");
  std::vector<Box> boxes;
  for (const auto& g : geometry) boxes.push_back(box_of(g));
  for (std::size_t i = 0; i < geometry.size(); ++i)
    for (std::size_t j = i + 1; j < geometry.size(); ++j)
      if (boxes_overlap(boxes[i], boxes[j]) && triangle_interiors_overlap(geometry[i], geometry[j]))
        report.tiling.push_back("overlap " + describe(h.triangles()[i]) + " " + describe(h.triangles()[j]));

  std::map<std::pair<Label, Label>, int> incidence;
  for (const auto& t : h.triangles())
    for (int i = 0; i < 3; ++i) incidence[label_edge(t.labels[i], t.labels[(i + 1) % 3])]++;
  for (const auto& [edge, count] : incidence) {
    const Point a = label_sum(base, edge.first), b = label_sum(base, edge.second);
    const std::string name = format_label(edge.first) + " / " + format_label(edge.second);
    for (const auto& [p, l] : at)
      if (strictly_on_segment(p, a, b)) report.tiling.push_back("vertex " + format_label(l) + " inside edge " + name);
    if (count > 2) report.tiling.push_back("edge " + name + " in " + std::to_string(count) + " triangles");
    if (count == 1) {
      bool on_hull = false;
      for (std::size_t i = 0; i < hull.size() && !on_hull; ++i) {
        const Point& s = hull[i];
        const Point& e = hull[(i + 1) % hull.size()];
        on_hull = on_segment(a, s, e) && on_segment(b, s, e);
      }
      if (!on_hull) report.tiling.push_back("edge " + name + " has one triangle but is not on the hull");
    }
  }
  return report;
}

Hypertriangulation level1_of(const Triangulation& p) {
  std::vector<LabeledTriangle> triangles;
  for (const auto& [a, b, c] : p.triangles()) triangles.push_back(make_labeled({bit(a)}, {bit(b)}, {bit(c)}));
  return Hypertriangulation(p.base_ptr(), 1, std::move(triangles));
}

Hypertriangulation order_k_delaunay(std::shared_ptr<const PointSet> base, int k) {
  const PointSet& a = *base;
  const int n = static_cast<int>(a.size());
  if (k < 1 || k > n - 1) throw GeometryError("order must lie in 1..n-1");
  std::vector<LabeledTriangle> triangles;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        std::uint32_t inside = 0;
        for (int q = 0; q < n; ++q)
          if (q != i && q != j && q != l && in_circle(a[i], a[j], a[l], a[q]) > 0) inside |= bit(q);
        const int count = std::popcount(inside);
        if (count == k - 2)
          triangles.push_back(make_labeled({inside | bit(i) | bit(j)}, {inside | bit(i) | bit(l)}, {inside | bit(j) | bit(l)}));
        else if (count == k - 1)
          triangles.push_back(make_labeled({inside | bit(i)}, {inside | bit(j)}, {inside | bit(l)}));
      }
  return Hypertriangulation(std::move(base), k, std::move(triangles));
}

// ---------------------------------------------------------------------------
// Level 2

std::vector<WhitePiece> level2_white_pieces(const Triangulation& p) {
  const PointSet& base = p.base();
  std::vector<WhitePiece> pieces;
  for (int x : p.vertex_set())
    for (auto& region : white_region(p, x)) pieces.push_back({x, std::move(region)});
  for (int y = 0; y < static_cast<int>(base.size()); ++y) {
    if (p.has_vertex(y)) continue;
    const auto host = p.locate(base[y]);
    if (!host) throw GeometryError("omitted point " + std::to_string(y) + " is not inside a triangle");
    for (int corner : p.triangles()[*host]) {
      bool placed = false;
      for (auto& piece : pieces) {
        if (piece.owner != corner) continue;
        const auto& b = piece.region.boundary;
        if (std::find(b.begin(), b.end(), y) != b.end()) {
          placed = true;
          break;
        }
        if (locate_in_polygon(base[y], region_polygon(base.points(), piece.region)) > 0) {
          piece.region.interior.push_back(y);
          placed = true;
          break;
        }
      }
      if (!placed) throw GeometryError("omitted point " + std::to_string(y) + " misses the white region of " + std::to_string(corner));
    }
  }
  for (auto& piece : pieces) std::sort(piece.region.interior.begin(), piece.region.interior.end());
  return pieces;
}

TriangleList Phi2::white_of(int x) const {
  TriangleList out;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].owner == x) out.insert(out.end(), white[i].begin(), white[i].end());
  return out;
}

TriangleList Phi2::all_triangles() const {
  TriangleList out = black.triangles();
  for (const auto& w : white) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Hypertriangulation level2_from(const Triangulation& p, const std::vector<WhitePiece>& pieces,
                               const std::vector<const TriangleList*>& white) {
  std::vector<LabeledTriangle> triangles;
  for (const auto& t : p.triangles()) triangles.push_back(aged_black(t));
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (const auto& t : *white[i]) triangles.push_back(white_in_region(pieces[i].owner, t));
  return Hypertriangulation(p.base_ptr(), 2, std::move(triangles));
}

FResult f_of(const Triangulation& p) {
  const auto points = p.base().points();
  auto pieces = level2_white_pieces(p);
  std::vector<TriangleList> white;
  for (const auto& piece : pieces) white.push_back(constrained_delaunay(points, piece.region));
  std::vector<const TriangleList*> refs;
  for (const auto& w : white) refs.push_back(&w);
  Hypertriangulation level2 = level2_from(p, pieces, refs);
  return {Phi2{p, std::move(pieces), std::move(white)}, std::move(level2)};
}

Triangulation inverse_aging(const Hypertriangulation& h) {
  if (h.level() != 2) throw GeometryError("inverse aging to level 1 needs a level-2 hypertriangulation");
  TriangleList triangles;
  for (const auto& t : h.of_color(Color::Black)) {
    const auto white = inverse_age_triangle(t);
    triangles.push_back(make_triangle(lowest(white.labels[0].mask), lowest(white.labels[1].mask), lowest(white.labels[2].mask)));
  }
  const auto problems = check_triangulation(h.base(), triangles);
  if (!problems.empty()) throw GeometryError("black triangles do not come from a triangulation: " + problems.front());
  return Triangulation(h.base_ptr(), std::move(triangles));
}

std::size_t max_cells_from_env(std::size_t fallback) {
  const char* value = std::getenv("HYPERDEL_MAX_CELLS");
  if (value == nullptr || *value == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value, &end, 10);
  if (end == value || *end != '\0' || parsed == 0) return fallback;
  return static_cast<std::size_t>(parsed);
}

std::uint64_t Level2Frame::member_count() const {
  std::uint64_t total = 1;
  for (const auto* o : options) {
    if (o->empty()) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / o->size()) return std::numeric_limits<std::uint64_t>::max();
    total *= o->size();
  }
  return total;
}

Hypertriangulation assemble_level2(const Level2Frame& frame, const Level2Choice& choice) {
  std::vector<const TriangleList*> white;
  for (std::size_t i = 0; i < frame.options.size(); ++i) white.push_back(&(*frame.options[i])[choice[i]]);
  return level2_from(*frame.black, *frame.pieces, white);
}

void for_each_level2_frame(const std::shared_ptr<const PointSet>& base, bool maximal,
                           const std::function<void(const Level2Frame&)>& visit) {
  RegionTriangulator triangulator(base->points());
  const std::uint32_t interior = base->all_mask() & ~base->hull_mask();
  std::vector<std::uint32_t> vertex_masks;
  if (maximal) {
    // Every subset of the interior points, largest first.
    for (std::uint32_t sub = interior;; sub = (sub - 1) & interior) {
      vertex_masks.push_back(base->hull_mask() | sub);
      if (sub == 0) break;
    }
  } else {
    vertex_masks.push_back(base->all_mask());
  }
  for (std::uint32_t mask : vertex_masks) {
    for (const auto& list : triangulator.all(hull_region(*base, mask))) {
      const Triangulation p(base, list);
      const auto pieces = level2_white_pieces(p);
      Level2Frame frame{&p, &pieces, {}};
      for (const auto& piece : pieces) frame.options.push_back(&triangulator.all(piece.region));
      visit(frame);
    }
  }
}

bool for_each_choice(const Level2Frame& frame, const std::function<bool(const Level2Choice&)>& visit) {
  for (const auto* o : frame.options)
    if (o->empty()) return true;
  Level2Choice choice(frame.options.size(), 0);
  for (;;) {
    if (!visit(choice)) return false;
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < frame.options[i]->size()) break;
      choice[i] = 0;
    }
    if (i == choice.size()) return true;
  }
}

namespace {

std::vector<Hypertriangulation> collect_level2(const std::shared_ptr<const PointSet>& base, bool maximal, std::size_t limit) {
  std::vector<Hypertriangulation> out;
  for_each_level2_frame(base, maximal, [&](const Level2Frame& frame) {
    for_each_choice(frame, [&](const Level2Choice& choice) {
      if (out.size() >= limit) throw EnumerationLimit("more than " + std::to_string(limit) + " level-2 hypertriangulations");
      out.push_back(assemble_level2(frame, choice));
      return true;
    });
  });
  return out;
}

}  // namespace

std::vector<Hypertriangulation> enumerate_complete_level2(const std::shared_ptr<const PointSet>& base, std::size_t limit) {
  return collect_level2(base, false, limit);
}

std::vector<Hypertriangulation> enumerate_maximal_level2(const std::shared_ptr<const PointSet>& base, std::size_t limit) {
  return collect_level2(base, true, limit);
}

std::uint64_t count_level2(const std::shared_ptr<const PointSet>& base, bool maximal) {
  std::uint64_t total = 0;
  for_each_level2_frame(base, maximal, [&](const Level2Frame& frame) { total += frame.member_count(); });
  return total;
}

// ---------------------------------------------------------------------------
// Level 3, convex position

namespace {

// Half-plane index of d relative to ref: 0 for ccw angles in [0, pi), 1 for [pi, 2 pi).
int half_of(const Point& ref, const Point& d) {
  const int c = sign(cross(ref, d));
  return (c > 0 || (c == 0 && sign(dot(ref, d)) > 0)) ? 0 : 1;
}

// d1 comes strictly before d2 counterclockwise from ref.
bool ccw_before(const Point& ref, const Point& d1, const Point& d2) {
  const int h1 = half_of(ref, d1), h2 = half_of(ref, d2);
  if (h1 != h2) return h1 < h2;
  return sign(cross(d1, d2)) > 0;
}

// Boundary cycles of the faces of conv(A^(3)) left uncovered by `blacks`, with
// the face on the left. Returns nullopt for faces with holes or pinched boundaries.
std::optional<std::vector<std::vector<Label>>> uncovered_faces(const PointSet& base,
                                                               const std::vector<LabeledTriangle>& blacks,
                                                               const std::vector<Label>& hull) {
  std::map<std::pair<Label, Label>, int> edge_count;
  std::vector<std::pair<Label, Label>> directed;  // ccw edges of black triangles
  std::set<Label> black_vertices;
  for (const auto& t : blacks) {
    std::array<Label, 3> l = t.labels;
    if (orient(label_sum(base, l[0]), label_sum(base, l[1]), label_sum(base, l[2])) < 0) std::swap(l[1], l[2]);
    for (int i = 0; i < 3; ++i) {
      directed.emplace_back(l[i], l[(i + 1) % 3]);
      edge_count[label_edge(l[i], l[(i + 1) % 3])]++;
      black_vertices.insert(l[i]);
    }
  }
  std::vector<Point> hull_sums;
  for (const Label& h : hull) hull_sums.push_back(label_sum(base, h));
  auto on_hull_edge = [&](const Point& a, const Point& b) {
    for (std::size_t i = 0; i < hull_sums.size(); ++i) {
      const Point& s = hull_sums[i];
      const Point& e = hull_sums[(i + 1) % hull_sums.size()];
      if (on_segment(a, s, e) && on_segment(b, s, e)) return true;
    }
    return false;
  };

  std::map<Label, std::vector<Label>> outgoing;
  for (const auto& [u, v] : directed) {
    if (edge_count[label_edge(u, v)] != 1) continue;
    if (on_hull_edge(label_sum(base, u), label_sum(base, v))) continue;
    outgoing[v].push_back(u);
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Label s = hull[i], e = hull[(i + 1) % hull.size()];
    const Point ps = hull_sums[i], pe = hull_sums[(i + 1) % hull.size()];
    std::vector<Label> chain{s, e};
    for (const Label& v : black_vertices)
      if (v != s && v != e && strictly_on_segment(label_sum(base, v), ps, pe)) chain.push_back(v);
    const Point direction = pe - ps;
    std::sort(chain.begin(), chain.end(), [&](Label a, Label b) {
      return dot(label_sum(base, a) - ps, direction) < dot(label_sum(base, b) - ps, direction);
    });
    for (std::size_t j = 0; j + 1 < chain.size(); ++j)
      if (!edge_count.count(label_edge(chain[j], chain[j + 1]))) outgoing[chain[j]].push_back(chain[j + 1]);
  }

  std::set<std::pair<Label, Label>> used;
  std::vector<std::vector<Label>> faces;
  for (const auto& [from, targets] : outgoing) {
    for (const Label& to : targets) {
      if (used.count({from, to})) continue;
      std::vector<Label> cycle;
      Label p = from, v = to;
      for (std::size_t guard = 0;; ++guard) {
        if (guard > 4 * directed.size() + 4 * hull.size() + 8) throw GeometryError("face tracing did not close");
        used.insert({p, v});
        cycle.push_back(p);
        const auto it = outgoing.find(v);
        if (it == outgoing.end()) throw GeometryError("open face boundary at " + format_label(v));
        const Point back = label_sum(base, p) - label_sum(base, v);
        // Next edge clockwise from v->p: the latest counterclockwise, with v->p itself last.
        std::optional<Label> best;
        for (const Label& q : it->second) {
          const Point d = label_sum(base, q) - label_sum(base, v);
          if (!best) {
            best = q;
            continue;
          }
          const Point db = label_sum(base, *best) - label_sum(base, v);
          const bool q_back = q == p, best_back = *best == p;
          if (best_back && !q_back) best = q;
          else if (!best_back && !q_back && ccw_before(back, db, d)) best = q;
        }
        p = v;
        v = *best;
        if (p == from && v == to) break;
      }
      std::vector<Point> polygon;
      for (const Label& l : cycle) polygon.push_back(label_sum(base, l));
      if (signed_area2(polygon) <= 0) return std::nullopt;
      std::set<Label> distinct(cycle.begin(), cycle.end());
      if (distinct.size() != cycle.size()) return std::nullopt;
      faces.push_back(std::move(cycle));
    }
  }
  return faces;
}

}  // namespace

std::vector<Hypertriangulation> enumerate_level3_convex(const std::shared_ptr<const PointSet>& base, std::size_t limit) {
  if (!base->convex_position()) throw GeometryError("level-3 enumeration needs points in convex position");
  const int n = static_cast<int>(base->size());
  if (n < 4) throw GeometryError("level 3 needs at least four points");
  std::map<Point, std::vector<Label>, PointLess> by_sum;
  for (std::uint32_t m : k_subsets(n, 3)) by_sum[label_sum(*base, {m})].push_back({m});
  std::vector<Label> hull;
  for (const Point& h : level_hull_sums(*base, 3)) {
    const auto& labels = by_sum.at(h);
    if (labels.size() != 1) throw GeometryError("hull vertex of conv(A^(3)) with several labels");
    hull.push_back(labels.front());
  }

  RegionTriangulator triangulator(base->points());
  std::set<std::vector<LabeledTriangle>> seen;
  std::vector<Hypertriangulation> out;
  for_each_level2_frame(base, false, [&](const Level2Frame& frame) {
    for_each_choice(frame, [&](const Level2Choice& choice) {
      const Hypertriangulation level2 = assemble_level2(frame, choice);
      std::vector<LabeledTriangle> blacks;
      for (const auto& w : level2.of_color(Color::White)) blacks.push_back(age_triangle(w));
      const auto faces = uncovered_faces(*base, blacks, hull);
      if (!faces) return true;
      struct FaceOptions {
        std::uint32_t common;
        const std::vector<TriangleList>* options;
      };
      std::vector<FaceOptions> face_options;
      for (const auto& face : *faces) {
        std::uint32_t common = face.front().mask;
        for (const Label& l : face) common &= l.mask;
        if (std::popcount(common) != 2) return true;
        Region region;
        for (const Label& l : face) region.boundary.push_back(lowest(l.mask & ~common));
        face_options.push_back({common, &triangulator.all(region)});
      }
      std::vector<std::size_t> index(face_options.size(), 0);
      for (const auto& f : face_options)
        if (f.options->empty()) return true;
      for (;;) {
        std::vector<LabeledTriangle> triangles = blacks;
        for (std::size_t f = 0; f < face_options.size(); ++f)
          for (const auto& t : (*face_options[f].options)[index[f]]) {
            const std::uint32_t y = face_options[f].common;
            triangles.push_back(make_labeled({y | bit(t[0])}, {y | bit(t[1])}, {y | bit(t[2])}));
          }
        Hypertriangulation level3(base, 3, std::move(triangles));
        if (seen.insert(level3.triangles()).second) {
          if (out.size() >= limit) throw EnumerationLimit("more than " + std::to_string(limit) + " level-3 hypertriangulations");
          out.push_back(std::move(level3));
        }
        std::size_t f = 0;
        for (; f < index.size(); ++f) {
          if (++index[f] < face_options[f].options->size()) break;
          index[f] = 0;
        }
        if (f == index.size()) break;
      }
      return true;
    });
  });
  std::sort(out.begin(), out.end(), [](const Hypertriangulation& a, const Hypertriangulation& b) {
    return a.triangles() < b.triangles();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Independent exhaustive enumeration

namespace {

// Tiles regions over the universe of level-k labels. Boundary vertices are
// required; optional points may become vertices or be covered.
class TilingSearch {
 public:
  TilingSearch(std::vector<Label> labels, std::vector<Point> sums, int k)
      : labels_(std::move(labels)), sums_(std::move(sums)), k_(k) {}

  using Tiling = std::vector<std::array<int, 3>>;

  const std::vector<Tiling>& all(const std::vector<int>& boundary, std::uint64_t optional) {
    std::vector<int> key = boundary;
    std::rotate(key.begin(), std::min_element(key.begin(), key.end()), key.end());
    const auto memo_key = std::make_pair(key, optional);
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    std::vector<Tiling> result;
    const std::size_t m = boundary.size();
    const int u = boundary[0], v = boundary[1];

    auto try_apex = [&](int p, std::uint64_t& remaining) {
      if (!compatible(u, v) || !compatible(u, p) || !compatible(v, p)) return false;
      if (orient(sums_[u], sums_[v], sums_[p]) <= 0) return false;
      for (int w : boundary)
        if (w != u && w != v && w != p && in_closed_triangle(sums_[w], sums_[u], sums_[v], sums_[p])) return false;
      for (std::size_t i = 0; i < m; ++i) {
        const Point& s = sums_[boundary[i]];
        const Point& t = sums_[boundary[(i + 1) % m]];
        if (segments_conflict(sums_[u], sums_[p], s, t) || segments_conflict(sums_[p], sums_[v], s, t)) return false;
      }
      remaining = optional & ~(std::uint64_t{1} << p);
      for (std::uint64_t o = remaining; o != 0; o &= o - 1) {
        const int w = std::countr_zero(o);
        if (in_closed_triangle(sums_[w], sums_[u], sums_[v], sums_[p])) remaining &= ~(std::uint64_t{1} << w);
      }
      return true;
    };

    auto combine = [&](int p, const std::vector<std::pair<std::vector<int>, std::uint64_t>>& parts) {
      std::vector<Tiling> partial{{sorted_triple(u, v, p)}};
      for (const auto& [b, o] : parts) {
        const auto& options = all(b, o);
        std::vector<Tiling> next;
        for (const auto& left : partial)
          for (const auto& right : options) {
            Tiling merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
          }
        partial.swap(next);
        if (partial.empty()) return;
      }
      for (auto& t : partial) {
        std::sort(t.begin(), t.end());
        result.push_back(std::move(t));
      }
    };

    for (std::size_t j = 2; j < m; ++j) {
      std::uint64_t remaining = 0;
      const int p = boundary[j];
      if (!try_apex(p, remaining)) continue;
      std::vector<std::pair<std::vector<int>, std::uint64_t>> parts;
      if (j >= 3) parts.push_back({std::vector<int>(boundary.begin() + 1, boundary.begin() + static_cast<long>(j) + 1), 0});
      if (j + 1 < m) {
        std::vector<int> second(boundary.begin() + static_cast<long>(j), boundary.end());
        second.push_back(boundary[0]);
        parts.push_back({std::move(second), 0});
      }
      bool lost = false;
      for (std::uint64_t o = remaining; o != 0; o &= o - 1) {
        const int w = std::countr_zero(o);
        bool placed = false;
        for (auto& [b, mask] : parts) {
          std::vector<Point> polygon;
          for (int i : b) polygon.push_back(sums_[i]);
          if (locate_in_polygon(sums_[w], polygon) > 0) {
            mask |= std::uint64_t{1} << w;
            placed = true;
            break;
          }
        }
        if (!placed) lost = true;
      }
      if (lost) throw GeometryError("optional point outside every part");
      combine(p, parts);
    }
    for (std::uint64_t o = optional; o != 0; o &= o - 1) {
      const int p = std::countr_zero(o);
      std::uint64_t remaining = 0;
      if (!try_apex(p, remaining)) continue;
      std::vector<int> rest{u, p};
      rest.insert(rest.end(), boundary.begin() + 1, boundary.end());
      combine(p, {{std::move(rest), remaining}});
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return memo_.emplace(memo_key, std::move(result)).first->second;
  }

 private:
  bool compatible(int a, int b) const { return std::popcount(labels_[a].mask & labels_[b].mask) == k_ - 1; }
  static std::array<int, 3> sorted_triple(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
  }

  std::vector<Label> labels_;
  std::vector<Point> sums_;
  int k_;
  std::map<std::pair<std::vector<int>, std::uint64_t>, std::vector<Tiling>> memo_;
};

}  // namespace

std::vector<Hypertriangulation> enumerate_all_hypertriangulations(const std::shared_ptr<const PointSet>& base, int k,
                                                                  std::size_t limit) {
  const int n = static_cast<int>(base->size());
  if (k < 1 || k > n - 1) throw GeometryError("level must lie in 1..n-1");
  std::vector<Label> labels;
  std::vector<Point> sums;
  for (std::uint32_t m : k_subsets(n, k)) {
    labels.push_back({m});
    sums.push_back(label_sum(*base, {m}));
  }
  if (labels.size() > 64) throw GeometryError("exhaustive enumeration supports at most 64 labels");
  std::set<Point, PointLess> distinct(sums.begin(), sums.end());
  if (distinct.size() != sums.size()) throw GeometryError("coincident label positions are not supported by exhaustive enumeration");

  const auto hull = convex_hull(sums);
  std::uint64_t optional = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (std::find(hull.begin(), hull.end(), static_cast<int>(i)) != hull.end()) continue;
    for (std::size_t h = 0; h < hull.size(); ++h)
      if (strictly_on_segment(sums[i], sums[hull[h]], sums[hull[(h + 1) % hull.size()]]))
        throw GeometryError("label on a hull edge is not supported by exhaustive enumeration");
    optional |= std::uint64_t{1} << i;
  }
  TilingSearch search(labels, sums, k);
  std::vector<Hypertriangulation> out;
  for (const auto& tiling : search.all(hull, optional)) {
    if (out.size() >= limit) throw EnumerationLimit("more than " + std::to_string(limit) + " hypertriangulations");
    std::vector<LabeledTriangle> triangles;
    for (const auto& t : tiling) triangles.push_back(make_labeled(labels[t[0]], labels[t[1]], labels[t[2]]));
    out.emplace_back(base, k, std::move(triangles));
  }
  return out;
}

bool subdivides(const Hypertriangulation& fine, const Hypertriangulation& coarse) {
  if (fine.level() != coarse.level() || fine == coarse) return false;
  const PointSet& base = fine.base();
  std::vector<std::array<Point, 3>> coarse_sums;
  for (const auto& t : coarse.triangles()) coarse_sums.push_back(triangle_sums(base, t));
  for (const auto& t : fine.triangles()) {
    const auto s = triangle_sums(base, t);
    bool inside = false;
    for (const auto& c : coarse_sums) {
      if (in_closed_triangle(s[0], c[0], c[1], c[2]) && in_closed_triangle(s[1], c[0], c[1], c[2]) &&
          in_closed_triangle(s[2], c[0], c[1], c[2])) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

std::vector<Hypertriangulation> maximal_members(const std::vector<Hypertriangulation>& family) {
  std::vector<Hypertriangulation> out;
  for (const auto& h : family) {
    bool subdivided = false;
    for (const auto& other : family)
      if (other.size() > h.size() && subdivides(other, h)) {
        subdivided = true;
        break;
      }
    if (!subdivided) out.push_back(h);
  }
  return out;
}

}  // namespace hyperdel
