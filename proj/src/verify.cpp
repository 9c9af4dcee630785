#include "hyperdel/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace hyperdel {

namespace {

class Timer {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

VerificationReport start(const std::string& claim, const PointSet& base) {
  VerificationReport r;
  r.claim = claim;
  r.instance = describe_points(base);
  return r;
}

std::string describe_triangle(const LabeledTriangle& t) {
  return std::string(color_name(classify(t))) + " [" + format_label(t.labels[0]) + " | " + format_label(t.labels[1]) +
         " | " + format_label(t.labels[2]) + "]";
}

void add_triangles(std::vector<std::string>& out, const Hypertriangulation& h) {
  for (const auto& t : h.triangles()) out.push_back(describe_triangle(t));
}

std::string describe_level1(const TriangleList& triangles) {
  std::string out;
  for (const auto& [a, b, c] : triangles) {
    if (!out.empty()) out += ' ';
    out += std::to_string(a) + "-" + std::to_string(b) + "-" + std::to_string(c);
  }
  return out;
}

bool too_large(VerificationReport& r, const PointSet& base, int bound, const std::string& what) {
  if (static_cast<int>(base.size()) <= bound) return false;
  r.status = Status::Unresolved;
  r.note = "n=" + std::to_string(base.size()) + " exceeds the bound " + std::to_string(bound) + " for " + what;
  return true;
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

std::string join_counts(const std::set<std::size_t>& values) {
  std::string out;
  for (std::size_t v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace

const char* status_name(Status status) {
  switch (status) {
    case Status::Verified: return "Verified";
    case Status::Refuted: return "Refuted";
    case Status::Unresolved: return "Unresolved";
  }
  return "?";
}

std::string describe_points(const PointSet& base) {
  std::string out;
  for (const Point& p : base.points()) {
    if (!out.empty()) out += ' ';
    out += "(" + format_rational(p.x) + "," + format_rational(p.y) + ")";
  }
  return out;
}

std::shared_ptr<const PointSet> random_generic_points(Rng& rng, int n, int range) {
  if (n < 3 || n > static_cast<int>(kMaxPoints)) throw GeometryError("point count out of range");
  std::uniform_int_distribution<long> coordinate(0, range);
  for (;;) {
    std::vector<Point> points;
    for (int i = 0; i < n; ++i) points.emplace_back(coordinate(rng), coordinate(rng));
    auto result = validate_generic(std::move(points));
    if (auto* set = std::get_if<PointSet>(&result)) return std::make_shared<const PointSet>(std::move(*set));
  }
}

std::shared_ptr<const PointSet> random_convex_points(Rng& rng, int n, int range) {
  if (n < 3 || n > static_cast<int>(kMaxPoints)) throw GeometryError("point count out of range");
  std::uniform_real_distribution<double> turn(0.0, 2.0 * std::acos(-1.0));
  const double radius = range / 2.0;
  for (;;) {
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (double& a : angles) a = turn(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Point> points;
    for (double a : angles)
      points.emplace_back(std::lround(radius + radius * std::cos(a)), std::lround(radius + radius * std::sin(a)));
    auto result = validate_generic(std::move(points));
    auto* set = std::get_if<PointSet>(&result);
    if (set != nullptr && set->convex_position()) return std::make_shared<const PointSet>(std::move(*set));
  }
}

TriangleList level1_shapes(const Hypertriangulation& h) {
  if (h.level() != 2) throw GeometryError("level-1 shapes need a level-2 hypertriangulation");
  TriangleList out;
  for (const auto& t : h.triangles()) {
    const LabeledTriangle base = classify(t) == Color::Black ? inverse_age_triangle(t) : t;
    const std::uint32_t common = base.labels[0].mask & base.labels[1].mask & base.labels[2].mask;
    std::array<int, 3> v{};
    for (int i = 0; i < 3; ++i) v[i] = std::countr_zero(base.labels[i].mask & ~common);
    out.push_back(make_triangle(v[0], v[1], v[2]));
  }
  return out;
}

// ---------------------------------------------------------------------------

VerificationReport verify_order_k_tiling(const std::shared_ptr<const PointSet>& base) {
  Timer timer;
  auto r = start("order-k-tiling", *base);
  r.status = Status::Verified;
  for (int k = 1; k < static_cast<int>(base->size()); ++k) {
    const auto h = order_k_delaunay(base, k);
    const auto v = validate_hypertriangulation(h);
    ++r.instances;
    if (!v.ok()) {
      r.status = Status::Refuted;
      r.witness.push_back("order " + std::to_string(k));
      for (const auto& s : v.all()) r.witness.push_back(s);
    }
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_lap_all_orders(const std::shared_ptr<const PointSet>& base) {
  Timer timer;
  auto r = start("thm3.3", *base);
  r.status = Status::Verified;
  std::size_t edges = 0;
  for (int k = 1; k < static_cast<int>(base->size()); ++k) {
    const auto lap = check_lap(order_k_delaunay(base, k));
    ++r.instances;
    edges += lap.interior_edges;
    r.details["interior_edges_k" + std::to_string(k)] = std::to_string(lap.interior_edges);
    if (!lap.holds()) {
      r.status = Status::Refuted;
      for (const auto* group : {&lap.ww, &lap.bb, &lap.bw})
        for (const auto& v : *group) r.witness.push_back("order " + std::to_string(k) + ": " + v.describe());
    }
  }
  r.details["interior_edges"] = std::to_string(edges);
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_aging_chain(const std::shared_ptr<const PointSet>& base) {
  Timer timer;
  auto r = start("aging-chain", *base);
  r.status = Status::Verified;
  const int n = static_cast<int>(base->size());
  for (int k = 1; k + 1 < n; ++k) {
    std::vector<LabeledTriangle> aged;
    for (const auto& w : order_k_delaunay(base, k).of_color(Color::White)) aged.push_back(age_triangle(w));
    std::sort(aged.begin(), aged.end());
    const auto blacks = order_k_delaunay(base, k + 1).of_color(Color::Black);
    ++r.instances;
    if (aged != blacks) {
      r.status = Status::Refuted;
      r.witness.push_back("order " + std::to_string(k + 1) + " blacks differ from aged order " + std::to_string(k) +
                          " whites");
    }
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_cross_construction(const std::shared_ptr<const PointSet>& base) {
  Timer timer;
  auto r = start("cross-construction", *base);
  const auto f = f_of(delaunay(base));
  const auto d2 = order_k_delaunay(base, 2);
  r.instances = 1;
  r.status = f.level2 == d2 ? Status::Verified : Status::Refuted;
  if (r.status == Status::Refuted) {
    r.witness.push_back("f(D):");
    add_triangles(r.witness, f.level2);
    r.witness.push_back("order-2 Delaunay:");
    add_triangles(r.witness, d2);
  }
  r.seconds = timer.seconds();
  return r;
}

namespace {

// Walks every complete level-2 member as a rank histogram of its level-1 shapes.
void for_each_member_histogram(const std::shared_ptr<const PointSet>& base, const AngleRanker& ranker,
                               const std::function<void(const Level2Frame&, const Level2Choice&,
                                                        const AngleRanker::Histogram&)>& visit) {
  const std::size_t limit = max_cells_from_env();
  std::uint64_t seen = 0;
  for_each_level2_frame(base, false, [&](const Level2Frame& frame) {
    const auto black = ranker.histogram(frame.black->triangles());
    std::vector<std::vector<AngleRanker::Histogram>> option_hist;
    for (const auto* options : frame.options) {
      auto& per = option_hist.emplace_back();
      for (const auto& o : *options) per.push_back(ranker.histogram(o));
    }
    AngleRanker::Histogram total;
    for_each_choice(frame, [&](const Level2Choice& choice) {
      if (++seen > limit) throw EnumerationLimit("more than " + std::to_string(limit) + " level-2 hypertriangulations");
      total = black;
      for (std::size_t i = 0; i < choice.size(); ++i) {
        const auto& h = option_hist[i][choice[i]];
        for (std::size_t q = 0; q < h.size(); ++q) total[q] += h[q];
      }
      visit(frame, choice, total);
      return true;
    });
  });
}

}  // namespace

VerificationReport verify_angle_optimality(const std::shared_ptr<const PointSet>& base, int bound) {
  Timer timer;
  auto r = start("thm4.3", *base);
  if (too_large(r, *base, bound, "exhaustive level-1 enumeration")) {
    r.note += "; " + std::to_string(count_triangulations(*base, base->all_mask())) + " complete triangulations";
    return r;
  }
  try {
    const auto points = base->points();
    const auto d = delaunay(base);
    const auto vd = sorted_angle_vector(points, f_of(d).phi.all_triangles());
    std::uint64_t less = 0, equal = 0, non_delaunay_less = 0, non_delaunay_equal = 0;
    r.status = Status::Verified;
    for (const auto& p : enumerate_triangulations(base, base->all_mask())) {
      const auto order = lex_compare(sorted_angle_vector(points, f_of(p).phi.all_triangles()), vd);
      ++r.instances;
      if (order == std::weak_ordering::greater) {
        r.status = Status::Refuted;
        r.witness.push_back("V(f(P)) > V(f(D)) for P = " + describe_level1(p.triangles()));
      } else if (order == std::weak_ordering::less) {
        ++less;
        if (!(p == d)) ++non_delaunay_less;
      } else {
        ++equal;
        if (!(p == d)) ++non_delaunay_equal;
      }
    }
    r.details["triangulations_less"] = std::to_string(less);
    r.details["triangulations_equal"] = std::to_string(equal);
    r.details["non_delaunay_less"] = std::to_string(non_delaunay_less);
    r.details["non_delaunay_equal"] = std::to_string(non_delaunay_equal);

    const AngleRanker ranker(points);
    const auto d2 = ranker.histogram(level1_shapes(order_k_delaunay(base, 2)));
    std::uint64_t members = 0, members_less = 0, members_equal = 0;
    for_each_member_histogram(base, ranker, [&](const Level2Frame& frame, const Level2Choice& choice,
                                                const AngleRanker::Histogram& h) {
      ++members;
      const auto order = AngleRanker::compare(h, d2);
      if (order == std::weak_ordering::less) ++members_less;
      else if (order == std::weak_ordering::equivalent) ++members_equal;
      else if (r.witness.size() < 64) {
        r.status = Status::Refuted;
        r.witness.push_back("complete level-2 member beats order-2 Delaunay:");
        add_triangles(r.witness, assemble_level2(frame, choice));
      }
    });
    r.instances += members;
    r.details["level2_members"] = std::to_string(members);
    r.details["level2_less"] = std::to_string(members_less);
    r.details["level2_equal"] = std::to_string(members_equal);
  } catch (const EnumerationLimit& e) {
    r.status = Status::Unresolved;
    r.note = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_min_angle(const std::shared_ptr<const PointSet>& base, int bound) {
  Timer timer;
  auto r = start("cor4.5", *base);
  if (too_large(r, *base, bound, "exhaustive level-1 enumeration")) return r;
  try {
    const auto points = base->points();
    const auto vd = sorted_angle_vector(points, f_of(delaunay(base)).phi.all_triangles());
    const AngleRef& best = min_angle(vd);
    r.details["delaunay_min_angle_cot"] = format_rational(vd[0].cotangent);
    r.details["delaunay_min_angle_approx_degrees"] = std::to_string(approx_degrees(best));
    r.status = Status::Verified;
    for (const auto& p : enumerate_triangulations(base, base->all_mask())) {
      const auto v = sorted_angle_vector(points, f_of(p).phi.all_triangles());
      ++r.instances;
      if (compare_angles(min_angle(v), best) == std::weak_ordering::greater) {
        r.status = Status::Refuted;
        r.witness.push_back("min angle of f(P) exceeds f(D) for P = " + describe_level1(p.triangles()));
      }
    }
    const AngleRanker ranker(points);
    const int d2 = AngleRanker::min_rank(ranker.histogram(level1_shapes(order_k_delaunay(base, 2))));
    std::uint64_t members = 0;
    for_each_member_histogram(base, ranker, [&](const Level2Frame& frame, const Level2Choice& choice,
                                                const AngleRanker::Histogram& h) {
      ++members;
      if (AngleRanker::min_rank(h) > d2 && r.witness.size() < 64) {
        r.status = Status::Refuted;
        r.witness.push_back("complete level-2 member with a larger minimum angle:");
        add_triangles(r.witness, assemble_level2(frame, choice));
      }
    });
    r.instances += members;
    r.details["level2_members"] = std::to_string(members);
  } catch (const EnumerationLimit& e) {
    r.status = Status::Unresolved;
    r.note = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_lap_uniqueness_level2(const std::shared_ptr<const PointSet>& base, int bound) {
  Timer timer;
  auto r = start("thm5.2", *base);
  if (too_large(r, *base, bound, "maximal level-2 enumeration")) return r;
  try {
    const auto d2 = order_k_delaunay(base, 2);
    const std::size_t limit = max_cells_from_env();
    std::uint64_t holders = 0;
    bool delaunay_holds = false;
    for_each_level2_frame(base, true, [&](const Level2Frame& frame) {
      for_each_choice(frame, [&](const Level2Choice& choice) {
        if (++r.instances > limit) throw EnumerationLimit("more than " + std::to_string(limit) + " members");
        const auto h = assemble_level2(frame, choice);
        if (!check_lap(h).holds()) return true;
        ++holders;
        if (h == d2) {
          delaunay_holds = true;
        } else {
          r.witness.push_back("member with the local angle property other than order-2 Delaunay:");
          add_triangles(r.witness, h);
        }
        return true;
      });
    });
    r.details["members"] = std::to_string(r.instances);
    r.details["lap_holders"] = std::to_string(holders);
    r.details["delaunay_holds"] = delaunay_holds ? "true" : "false";
    r.status = holders == 1 && delaunay_holds ? Status::Verified : Status::Refuted;
    if (r.status == Status::Refuted && r.witness.empty()) r.witness.push_back("order-2 Delaunay is not among the members");
  } catch (const EnumerationLimit& e) {
    r.status = Status::Unresolved;
    r.note = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_lap_level3_convex(const std::shared_ptr<const PointSet>& base, int bound) {
  Timer timer;
  auto r = start("thm5.3", *base);
  if (!base->convex_position()) throw GeometryError("level-3 uniqueness check needs points in convex position");
  if (too_large(r, *base, bound, "level-3 enumeration")) return r;
  try {
    const auto d3 = order_k_delaunay(base, 3);
    const auto members = enumerate_level3_convex(base, max_cells_from_env());
    std::uint64_t holders = 0;
    bool delaunay_holds = false;
    std::size_t bb_only = 0;
    for (const auto& h : members) {
      const auto lap = check_lap(h);
      if (!lap.holds()) {
        if (lap.ww.empty() && lap.bw.empty()) ++bb_only;
        continue;
      }
      ++holders;
      if (h == d3) {
        delaunay_holds = true;
      } else {
        r.witness.push_back("member with the local angle property other than order-3 Delaunay:");
        add_triangles(r.witness, h);
      }
    }
    r.instances = members.size();
    r.details["members"] = std::to_string(members.size());
    r.details["lap_holders"] = std::to_string(holders);
    r.details["failing_bb_only"] = std::to_string(bb_only);
    r.details["delaunay_holds"] = delaunay_holds ? "true" : "false";
    r.status = holders == 1 && delaunay_holds ? Status::Verified : Status::Refuted;
    if (r.status == Status::Refuted && r.witness.empty()) r.witness.push_back("order-3 Delaunay is not among the members");
  } catch (const EnumerationLimit& e) {
    r.status = Status::Unresolved;
    r.note = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport verify_maximal_counts(const std::shared_ptr<const PointSet>& base, int bound) {
  Timer timer;
  auto r = start("lem2.6", *base);
  if (too_large(r, *base, bound, "maximal level-2 enumeration")) return r;
  std::set<std::size_t> maximal, complete;
  for_each_level2_frame(base, true, [&](const Level2Frame& frame) {
    for_each_choice(frame, [&](const Level2Choice& choice) {
      const auto h = assemble_level2(frame, choice);
      ++r.instances;
      maximal.insert(h.size());
      if (frame.black->complete()) complete.insert(h.size());
      return true;
    });
  });
  r.details["maximal_counts"] = join_counts(maximal);
  r.details["complete_counts"] = join_counts(complete);
  r.status = maximal.size() == 1 && complete == maximal ? Status::Verified : Status::Refuted;
  if (r.status == Status::Refuted)
    r.witness.push_back("triangle counts: maximal {" + join_counts(maximal) + "} complete {" + join_counts(complete) + "}");
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const PointSet> order3_counterexample_points() {
  return std::make_shared<const PointSet>(PointSet::from_points({{0, 0}, {4, 0}, {5, 3}, {1, 4}}));
}

VerificationReport reproduce_order3_counterexample() {
  Timer timer;
  const auto base = order3_counterexample_points();
  auto r = start("cex-order3", *base);
  const auto d = delaunay(base);
  const auto all = enumerate_triangulations(base, base->all_mask());
  const Triangulation* other = nullptr;
  for (const auto& p : all)
    if (!(p == d)) other = &p;
  const auto d3 = order_k_delaunay(base, 3);
  const auto members = enumerate_level3_convex(base);
  const Hypertriangulation* p3 = nullptr;
  for (const auto& h : members)
    if (!(h == d3)) p3 = &h;
  r.instances = members.size();
  r.details["level3_members"] = std::to_string(members.size());
  if (all.size() != 2 || members.size() != 2 || other == nullptr || p3 == nullptr) {
    r.status = Status::Unresolved;
    r.note = "expected two triangulations and two level-3 hypertriangulations";
    r.seconds = timer.seconds();
    return r;
  }
  const auto v_d3 = sorted_angle_vector(d3), v_p3 = sorted_angle_vector(*p3);
  const auto v_d = sorted_angle_vector(base->points(), d.triangles());
  const auto v_p = sorted_angle_vector(base->points(), other->triangles());
  const auto main = lex_compare(v_d3, v_p3);
  const bool d3_matches_p = lex_compare(v_d3, v_p) == std::weak_ordering::equivalent;
  const bool p3_matches_d = lex_compare(v_p3, v_d) == std::weak_ordering::equivalent;
  // Blacks of order-3 Delaunay are inverted copies of the triangles of P.
  TriangleList copies;
  for (const auto& t : d3.of_color(Color::Black)) {
    const std::uint32_t common = t.labels[0].mask & t.labels[1].mask & t.labels[2].mask;
    const std::uint32_t corners = (t.labels[0].mask | t.labels[1].mask | t.labels[2].mask) & ~common;
    std::vector<int> v;
    for (std::uint32_t m = corners; m != 0; m &= m - 1) v.push_back(std::countr_zero(m));
    copies.push_back(make_triangle(v[0], v[1], v[2]));
  }
  canonicalize(copies);
  const bool inverted_copies = copies == other->triangles();
  r.details["V(D3)_vs_V(P3)"] = ordering_name(main);
  r.details["V(D3)_equals_V(P)"] = d3_matches_p ? "true" : "false";
  r.details["V(P3)_equals_V(D)"] = p3_matches_d ? "true" : "false";
  r.details["D3_blacks_are_copies_of_P"] = inverted_copies ? "true" : "false";
  if (main == std::weak_ordering::less && d3_matches_p && p3_matches_d && inverted_copies) {
    r.status = Status::Refuted;
    r.note = "angle optimality does not extend to order 3: V(D3) < V(P3)";
    r.witness.push_back("P3, the other level-3 hypertriangulation:");
    add_triangles(r.witness, *p3);
    r.witness.push_back("min angle of D3 (deg, approx) " + std::to_string(approx_degrees(min_angle(v_d3))));
    r.witness.push_back("min angle of P3 (deg, approx) " + std::to_string(approx_degrees(min_angle(v_p3))));
  } else {
    r.status = Status::Unresolved;
    r.note = "counterexample did not reproduce";
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport search_counterexample(const SearchConfig& config) {
  Timer timer;
  VerificationReport r;
  r.claim = "search-fig5";
  r.instance = "random n=" + std::to_string(config.n) + " range=" + std::to_string(config.range) +
               " seed=" + std::to_string(config.seed);
  r.status = Status::Unresolved;
  Rng rng(config.seed);
  std::uint64_t sets = 0, convex_skipped = 0, frames = 0, pruned = 0, candidates = 0;
  bool out_of_time = false;
  for (std::uint64_t s = 0; s < config.samples; ++s) {
    if (timer.seconds() > config.time_budget_seconds) {
      out_of_time = true;
      break;
    }
    const auto base = random_generic_points(rng, config.n, config.range);
    ++sets;
    if (base->convex_position()) {
      ++convex_skipped;
      continue;
    }
    const AngleRanker ranker(base->points());
    const auto d2 = order_k_delaunay(base, 2);
    const int d2_min = AngleRanker::min_rank(ranker.histogram(level1_shapes(d2)));
    RegionTriangulator triangulator(base->points());
    std::map<std::vector<int>, std::pair<int, std::size_t>> best_option;  // region key -> (min rank, option)
    const std::uint32_t interior = base->all_mask() & ~base->hull_mask();
    for (std::uint32_t sub = (interior - 1) & interior;; sub = (sub - 1) & interior) {
      const std::uint32_t mask = base->hull_mask() | sub;
      for (const auto& list : triangulator.all(hull_region(*base, mask))) {
        ++frames;
        if (AngleRanker::min_rank(ranker.histogram(list)) <= d2_min) {
          ++pruned;
          continue;
        }
        const Triangulation p(base, list);
        const auto pieces = level2_white_pieces(p);
        int overall = AngleRanker::min_rank(ranker.histogram(list));
        Level2Choice choice;
        std::vector<const std::vector<TriangleList>*> options;
        for (const auto& piece : pieces) {
          const auto& opts = triangulator.all(piece.region);
          options.push_back(&opts);
          int best = -1;
          std::size_t best_index = 0;
          for (std::size_t i = 0; i < opts.size(); ++i) {
            const int m = AngleRanker::min_rank(ranker.histogram(opts[i]));
            if (m > best) {
              best = m;
              best_index = i;
            }
          }
          choice.push_back(best_index);
          overall = std::min(overall, best);
        }
        if (overall <= d2_min) continue;
        ++candidates;
        // Re-validate the candidate from scratch before reporting it.
        const Level2Frame frame{&p, &pieces, options};
        const auto h = assemble_level2(frame, choice);
        const auto validation = validate_hypertriangulation(h);
        const auto vh = sorted_angle_vector(h);
        const auto vd = sorted_angle_vector(d2);
        const bool beats = compare_angles(min_angle(vh), min_angle(vd)) == std::weak_ordering::greater;
        if (!validation.ok() || !beats || h.size() != d2.size()) continue;
        r.status = Status::Refuted;
        r.instance = describe_points(*base);
        r.note = "a maximal incomplete level-2 hypertriangulation has a larger minimum angle than order-2 Delaunay";
        r.details["witness_min_angle_approx_degrees"] = std::to_string(approx_degrees(min_angle(vh)));
        r.details["delaunay_min_angle_approx_degrees"] = std::to_string(approx_degrees(min_angle(vd)));
        r.details["witness_min_angle_cot"] = format_rational(vh[0].cotangent);
        r.details["delaunay_min_angle_cot"] = format_rational(vd[0].cotangent);
        r.details["triangles"] = std::to_string(h.size());
        r.details["omitted_points"] = std::to_string(std::popcount(base->all_mask() & ~mask));
        r.details["sample"] = std::to_string(s);
        r.witness.push_back("points " + describe_points(*base));
        r.witness.push_back("black triangulation " + describe_level1(list));
        add_triangles(r.witness, h);
        break;
      }
      if (r.status == Status::Refuted || sub == 0) break;
    }
    if (r.status == Status::Refuted) break;
  }
  r.instances = sets;
  r.details["sets_sampled"] = std::to_string(sets);
  r.details["convex_skipped"] = std::to_string(convex_skipped);
  r.details["incomplete_triangulations"] = std::to_string(frames);
  r.details["pruned_by_black_angles"] = std::to_string(pruned);
  r.details["candidates_checked"] = std::to_string(candidates);
  if (r.status != Status::Refuted)
    r.note = out_of_time ? "time budget exhausted without a witness" : "samples exhausted without a witness";
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Members of the family the conjecture checkers range over.
std::optional<std::vector<Hypertriangulation>> conjecture_family(const std::shared_ptr<const PointSet>& base, int k,
                                                                 bool maximal_only, std::string& source) {
  const std::size_t limit = max_cells_from_env();
  const int n = static_cast<int>(base->size());
  if (k == 2) {
    source = "maximal level-2 enumeration";
    return enumerate_maximal_level2(base, limit);
  }
  if (k == 3 && base->convex_position() && n >= 4) {
    source = "level-3 convex enumeration";
    return enumerate_level3_convex(base, limit);
  }
  if (n <= kExhaustiveBound) {
    auto all = enumerate_all_hypertriangulations(base, k, limit);
    source = "exhaustive tiling search";
    if (maximal_only) return maximal_members(all);
    return all;
  }
  return std::nullopt;
}

}  // namespace

VerificationReport check_conjecture_maximal_maximum(const std::shared_ptr<const PointSet>& base, int k, int bound) {
  Timer timer;
  auto r = start("conjC", *base);
  r.details["k"] = std::to_string(k);
  if (k < 1 || k >= static_cast<int>(base->size())) throw GeometryError("level must lie in 1..n-1");
  if (too_large(r, *base, bound, "maximal enumeration")) return r;
  try {
    std::string source;
    const auto family = conjecture_family(base, k, true, source);
    if (!family) {
      r.note = "no enumerator for this level and position";
      return r;
    }
    std::set<std::size_t> counts;
    for (const auto& h : *family) counts.insert(h.size());
    r.instances = family->size();
    r.details["source"] = source;
    r.details["counts"] = join_counts(counts);
    r.status = counts.size() <= 1 ? Status::Verified : Status::Refuted;
    if (r.status == Status::Refuted) r.witness.push_back("maximal members with triangle counts " + join_counts(counts));
  } catch (const EnumerationLimit& e) {
    r.status = Status::Unresolved;
    r.note = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

VerificationReport check_local_angle_conjecture(const std::shared_ptr<const PointSet>& base, int k, int bound) {
  Timer timer;
  auto r = start("conjB", *base);
  r.details["k"] = std::to_string(k);
  if (k < 1 || k >= static_cast<int>(base->size())) throw GeometryError("level must lie in 1..n-1");
  if (too_large(r, *base, bound, "hypertriangulation enumeration")) return r;
  try {
    std::string source;
    const auto family = conjecture_family(base, k, false, source);
    if (!family) {
      r.note = "no enumerator for this level and position";
      return r;
    }
    const auto dk = order_k_delaunay(base, k);
    std::size_t overall = 0, lap_max = 0, holders = 0;
    std::vector<const Hypertriangulation*> lap;
    for (const auto& h : *family) {
      overall = std::max(overall, h.size());
      if (!check_lap(h).holds()) continue;
      ++holders;
      lap.push_back(&h);
      lap_max = std::max(lap_max, h.size());
    }
    std::vector<const Hypertriangulation*> top;
    for (const auto* h : lap)
      if (h->size() == lap_max) top.push_back(h);
    r.instances = family->size();
    r.details["source"] = source;
    r.details["overall_max_count"] = std::to_string(overall);
    r.details["lap_holders"] = std::to_string(holders);
    r.details["lap_max_count"] = std::to_string(lap_max);
    r.details["delaunay_count"] = std::to_string(dk.size());
    r.details["lap_max_attains_overall"] = lap_max == overall ? "true" : "false";
    r.status = top.size() == 1 && *top.front() == dk ? Status::Verified : Status::Refuted;
    if (r.status == Status::Refuted) {
      r.witness.push_back(std::to_string(top.size()) + " members with the local angle property have " +
                          std::to_string(lap_max) + " triangles");
      for (const auto* h : top)
        if (!(*h == dk)) add_triangles(r.witness, *h);
    }
  } catch (const EnumerationLimit& e) {
    r.status = Status::Unresolved;
    r.note = e.what();
  }
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Lemma audits

bool LemmaAudit::clean() const {
  for (const auto& [name, tally] : tallies_)
    if (!tally.violations.empty()) return false;
  return true;
}

void LemmaAudit::star_convex(const Phi2& phi) {
  auto& t = tally("star-convex");
  const auto points = phi.black.base().points();
  for (std::size_t i = 0; i < phi.pieces.size(); ++i) {
    const int x = phi.pieces[i].owner;
    for (const auto& tri : phi.white[i]) {
      ++t.checked;
      const auto q = triangle_points(points, tri);
      const bool inside = orient(q[0], q[1], points[x]) > 0 && orient(q[1], q[2], points[x]) > 0 &&
                          orient(q[2], q[0], points[x]) > 0;
      const std::vector<Point> four{points[x], q[0], q[1], q[2]};
      if (!inside && convex_hull(four).size() != 4)
        t.violations.push_back("white " + describe_level1({tri}) + " of " + std::to_string(x));
    }
  }
}

void LemmaAudit::splitting(const Triangulation& p, int lines) {
  auto& t = tally("splitting");
  const PointSet& base = p.base();
  std::uniform_int_distribution<long> coefficient(-50, 50);
  const auto vertices = p.vertex_set();
  for (int line = 0; line < lines; ++line) {
    Rational a, b, c;
    for (;;) {
      a = coefficient(rng_);
      b = coefficient(rng_);
      if (a == 0 && b == 0) continue;
      // A random vertex value plus a fractional offset keeps the line near the points.
      const Point& anchor = base[vertices[std::uniform_int_distribution<std::size_t>(0, vertices.size() - 1)(rng_)]];
      c = a * anchor.x + b * anchor.y + Rational(coefficient(rng_), 7);
      bool misses = true;
      for (int v : vertices)
        if (a * base[v].x + b * base[v].y == c) misses = false;
      if (misses) break;
    }
    auto side = [&](int v) { return sign(Rational(a * base[v].x + b * base[v].y - c)); };
    DisjointSets sets(base.size());
    for (const auto& [edge, incident] : p.adjacency())
      if (side(edge.first) == side(edge.second)) sets.join(edge.first, edge.second);
    std::map<std::size_t, int> component_side;
    bool ok = true;
    for (int v : vertices) {
      const auto [it, inserted] = component_side.emplace(sets.find(v), side(v));
      if (!inserted && it->second != side(v)) ok = false;
    }
    std::map<int, int> per_side;
    for (const auto& [root, s] : component_side) ++per_side[s];
    for (const auto& [s, count] : per_side)
      if (count > 1) ok = false;
    ++t.checked;
    if (!ok)
      t.violations.push_back("line " + format_rational(a) + "x+" + format_rational(b) + "y=" + format_rational(c) + " splits " +
                             describe_level1(p.triangles()) + " into " + std::to_string(component_side.size()) + " components");
  }
}

void LemmaAudit::shared_interior(const Phi2& phi) {
  auto& t = tally("shared-interior");
  std::map<Triangle, std::set<int>> owners;
  for (std::size_t i = 0; i < phi.pieces.size(); ++i)
    for (const auto& tri : phi.white[i]) owners[tri].insert(phi.pieces[i].owner);
  for (const auto& [tri, who] : owners) {
    ++t.checked;
    if (who.size() != 1) t.violations.push_back("white " + describe_level1({tri}) + " used by " + std::to_string(who.size()) + " points");
  }
}

void LemmaAudit::white_union(const FResult& f) {
  auto& t = tally("white-union");
  const Triangulation& p = f.phi.black;
  const PointSet& base = p.base();
  const auto hull2 = level_hull_sums(base, 2);
  for (int x : p.vertex_set()) {
    ++t.checked;
    // In label-sum units the shrunken star is star + x.
    std::vector<Point> shrunk;
    for (const Point& q : region_polygon(base.points(), star(p, x))) shrunk.push_back(q + base[x]);
    const auto clipped = clip_to_convex(shrunk, hull2);
    const Rational target = clipped.size() >= 3 ? signed_area2(clipped) : Rational(0);
    Rational covered = 0;
    bool contained = true;
    for (const auto& w : f.level2.of_color(Color::White)) {
      if (!(w.labels[0].contains(x) && w.labels[1].contains(x) && w.labels[2].contains(x))) continue;
      const auto s = triangle_sums(base, w);
      covered += signed_area2(s);
      const auto inside = clip_to_convex(clipped, s);
      if (inside.size() < 3 || signed_area2(inside) != signed_area2(s)) contained = false;
    }
    if (covered != target || !contained)
      t.violations.push_back("white union of " + std::to_string(x) + " has area " + format_rational(covered) +
                             " against " + format_rational(target));
  }
}

void LemmaAudit::lap_structure(const Hypertriangulation& h) {
  const auto lap = check_lap(h);
  const PointSet& base = h.base();
  if (lap.bb.empty()) {
    auto& t = tally("black-convex");
    const auto& tris = h.triangles();
    std::vector<std::size_t> blacks;
    for (std::size_t i = 0; i < tris.size(); ++i)
      if (classify(tris[i]) == Color::Black) blacks.push_back(i);
    DisjointSets sets(tris.size());
    std::map<std::pair<Label, Label>, std::size_t> first_black;
    for (std::size_t i : blacks)
      for (int e = 0; e < 3; ++e) {
        Label a = tris[i].labels[e], b = tris[i].labels[(e + 1) % 3];
        if (b < a) std::swap(a, b);
        const auto [it, inserted] = first_black.emplace(std::pair{a, b}, i);
        if (!inserted) sets.join(i, it->second);
      }
    std::map<std::size_t, std::vector<std::size_t>> regions;
    for (std::size_t i : blacks) regions[sets.find(i)].push_back(i);
    for (const auto& [root, members] : regions) {
      ++t.checked;
      Rational area = 0;
      std::set<Label> labels;
      for (std::size_t i : members) {
        area += signed_area2(triangle_sums(base, tris[i]));
        labels.insert(tris[i].labels.begin(), tris[i].labels.end());
      }
      std::vector<Point> corners;
      for (const Label& l : labels) corners.push_back(label_sum(base, l));
      std::vector<Point> hull;
      for (int i : convex_hull(corners)) hull.push_back(corners[i]);
      bool inner_vertex = false;
      for (const Point& c : corners)
        if (locate_in_polygon(c, hull) > 0) inner_vertex = true;
      if (area != signed_area2(hull) || inner_vertex)
        t.violations.push_back("black region with " + std::to_string(members.size()) + " triangles is " +
                               (inner_vertex ? "hiding a vertex" : "not convex"));
    }
  }
  if (!lap.holds()) return;
  auto& sums = tally("black-angle-sum");
  for (const Label& v : h.vertices()) {
    ++sums.checked;
    const int s = black_angle_sum_vs_pi(h, v);
    if (s >= 0) sums.violations.push_back("black angles at " + format_label(v) + (s == 0 ? " sum to pi" : " exceed pi"));
  }
  if (h.level() >= 2) {
    auto& aging = tally("inverse-aging");
    std::vector<LabeledTriangle> lower;
    for (const auto& b : h.of_color(Color::Black)) lower.push_back(inverse_age_triangle(b));
    const Hypertriangulation previous(h.base_ptr(), h.level() - 1, std::move(lower));
    const auto ww = check_lap(previous);
    aging.checked += ww.interior_edges;
    for (const auto& v : ww.ww) aging.violations.push_back("inverse-aged " + v.describe());
  }
}

}  // namespace hyperdel
