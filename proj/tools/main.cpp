#include "point_file.hpp"
#include "svg.hpp"

#include "hyperdel/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace hyperdel;
using cli::InputError;
using nlohmann::ordered_json;

enum Exit { kSuccess = 0, kRefuted = 1, kUsage = 2, kUnresolved = 3 };

bool g_json = false;

void emit(const ordered_json& j) { std::cout << j.dump() << '\n'; }

ordered_json point_json(const Point& p) { return ordered_json::array({format_rational(p.x), format_rational(p.y)}); }

ordered_json label_json(Label l) { return l.indices(); }

ordered_json hyper_json(const Hypertriangulation& h) {
  ordered_json tris = ordered_json::array();
  for (const auto& t : h.triangles())
    tris.push_back({{"color", color_name(classify(t))},
                    {"labels", {label_json(t.labels[0]), label_json(t.labels[1]), label_json(t.labels[2])}}});
  const auto counts = triangle_counts(h);
  return {{"level", h.level()}, {"black", counts.black}, {"white", counts.white}, {"triangles", tris}};
}

std::string triangle_text(const LabeledTriangle& t) {
  return std::string(color_name(classify(t))) + " " + format_label(t.labels[0]) + " | " + format_label(t.labels[1]) +
         " | " + format_label(t.labels[2]);
}

std::string level1_text(const Triangle& t) {
  return std::to_string(t[0]) + "-" + std::to_string(t[1]) + "-" + std::to_string(t[2]);
}

void print_hyper(const Hypertriangulation& h) {
  const auto counts = triangle_counts(h);
  std::cout << "level " << h.level() << ": " << counts.total() << " triangles (" << counts.black << " black, "
            << counts.white << " white)\n";
  for (const auto& t : h.triangles()) std::cout << "  " << triangle_text(t) << '\n';
}

int exit_for(Status s) {
  switch (s) {
    case Status::Verified: return kSuccess;
    case Status::Refuted: return kRefuted;
    case Status::Unresolved: return kUnresolved;
  }
  return kUnresolved;
}

int report(const VerificationReport& r) {
  if (g_json) {
    ordered_json details = ordered_json::object();
    for (const auto& [k, v] : r.details) details[k] = v;
    emit({{"claim", r.claim},
          {"instance", r.instance},
          {"status", status_name(r.status)},
          {"witness", r.witness},
          {"details", details},
          {"instances", r.instances},
          {"seconds", r.seconds},
          {"note", r.note}});
  } else {
    std::cout << r.claim << ": " << status_name(r.status) << '\n';
    std::cout << "  instance: " << r.instance << '\n';
    std::cout << "  instances: " << r.instances << ", seconds: " << r.seconds << '\n';
    if (!r.note.empty()) std::cout << "  note: " << r.note << '\n';
    for (const auto& [k, v] : r.details) std::cout << "  " << k << ": " << v << '\n';
    if (!r.witness.empty()) std::cout << "  witness:\n";
    for (const auto& w : r.witness) std::cout << "    " << w << '\n';
  }
  return exit_for(r.status);
}

int fail(const std::string& command, int code, const std::string& message) {
  std::cerr << "hyperdel " << command << ": " << message << '\n';
  if (g_json) emit({{"command", command}, {"error", message}, {"exit", code}});
  return code;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const auto base = cli::load_point_set(path);
  if (g_json) {
    ordered_json points = ordered_json::array();
    for (const Point& p : base->points()) points.push_back(point_json(p));
    emit({{"command", "validate"},
          {"valid", true},
          {"n", base->size()},
          {"hull", base->hull()},
          {"convex_position", base->convex_position()},
          {"points", points}});
  } else {
    std::cout << "generic: " << base->size() << " points, " << base->hull().size() << " on the hull"
              << (base->convex_position() ? " (convex position)" : "") << '\n';
    std::cout << cli::format_points(base->points());
  }
  return kSuccess;
}

int cmd_delaunay(const std::string& path, int order) {
  const auto base = cli::load_point_set(path);
  if (order < 1 || order >= static_cast<int>(base->size()))
    throw InputError(0, "order must lie in 1.." + std::to_string(base->size() - 1));
  const auto h = order_k_delaunay(base, order);
  if (g_json) {
    auto j = hyper_json(h);
    j["command"] = "delaunay";
    emit(j);
  } else {
    print_hyper(h);
  }
  return kSuccess;
}

int print_lap(const LapReport& lap, int order) {
  if (g_json) {
    ordered_json violations = ordered_json::array();
    for (const auto* group : {&lap.ww, &lap.bb, &lap.bw})
      for (const auto& v : *group)
        violations.push_back({{"condition", condition_name(v.condition)},
                              {"edge", {label_json(v.edge.first), label_json(v.edge.second)}},
                              {"first", triangle_text(v.first)},
                              {"second", triangle_text(v.second)},
                              {"witness", v.witness}});
    emit({{"command", "lap-check"},
          {"order", order},
          {"holds", lap.holds()},
          {"interior_edges", lap.interior_edges},
          {"violations", violations}});
  } else {
    std::cout << "order " << order << ": " << lap.interior_edges << " interior edges, " << lap.violation_count()
              << " violations\n";
    for (const auto* group : {&lap.ww, &lap.bb, &lap.bw})
      for (const auto& v : *group) std::cout << "  " << v.describe() << '\n';
  }
  return lap.holds() ? kSuccess : kRefuted;
}

Triangulation checked_triangulation(const std::shared_ptr<const PointSet>& base, const std::string& spec) {
  auto triangles = cli::parse_triangle_spec(spec, base->size());
  const auto problems = check_triangulation(*base, triangles);
  if (!problems.empty()) throw InputError(0, "not a triangulation: " + problems.front());
  return Triangulation(base, std::move(triangles));
}

int cmd_lap_check(const std::string& path, std::optional<int> order, const std::string& spec) {
  const auto base = cli::load_point_set(path);
  if (!spec.empty()) {
    if (order && *order != 1) throw InputError(0, "--triangulation gives a level-1 structure");
    return print_lap(check_lap(level1_of(checked_triangulation(base, spec))), 1);
  }
  if (!order) throw InputError(0, "--order is required");
  if (*order < 1 || *order >= static_cast<int>(base->size()))
    throw InputError(0, "order must lie in 1.." + std::to_string(base->size() - 1));
  return print_lap(check_lap(order_k_delaunay(base, *order)), *order);
}

int cmd_angle_vector(const std::string& path, const std::string& spec, int order) {
  const auto base = cli::load_point_set(path);
  SortedAngleVector v;
  std::string source;
  if (!spec.empty()) {
    const auto p = checked_triangulation(base, spec);
    v = sorted_angle_vector(base->points(), p.triangles());
    source = "triangulation";
  } else {
    if (order < 1 || order >= static_cast<int>(base->size()))
      throw InputError(0, "order must lie in 1.." + std::to_string(base->size() - 1));
    v = sorted_angle_vector(order_k_delaunay(base, order));
    source = "order-" + std::to_string(order) + " delaunay";
  }
  if (g_json) {
    ordered_json angles = ordered_json::array();
    for (const auto& e : v.entries())
      angles.push_back({{"apex", point_json(e.angle.apex)},
                        {"rays", {point_json(e.angle.ray1), point_json(e.angle.ray2)}},
                        {"cotangent", format_rational(e.cotangent)},
                        {"approx_degrees", approx_degrees(e.angle)}});
    emit({{"command", "angle-vector"}, {"source", source}, {"size", v.size()}, {"angles", angles}});
  } else {
    std::cout << source << ": " << v.size() << " angles, smallest first\n";
    for (const auto& e : v.entries())
      std::cout << "  cot " << format_rational(e.cotangent) << "  (approx " << approx_degrees(e.angle) << " deg)\n";
  }
  return kSuccess;
}

struct VerifyArgs {
  std::string claim;
  std::string path;
  std::optional<int> bound;
  std::uint64_t seed = SearchConfig{}.seed;
  int order = 2;
  SearchConfig search;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.claim == "cex-order3") return report(reproduce_order3_counterexample());
  if (a.claim == "search-fig5") {
    SearchConfig config = a.search;
    config.seed = a.seed;
    return report(search_counterexample(config));
  }
  if (a.path.empty()) throw InputError(0, "claim '" + a.claim + "' needs a point file");
  const auto base = cli::load_point_set(a.path);
  auto bound = [&](int fallback) { return a.bound.value_or(fallback); };
  if (a.claim == "thm3.3") return report(verify_lap_all_orders(base));
  if (a.claim == "thm4.3") return report(verify_angle_optimality(base, bound(kLevel1Bound)));
  if (a.claim == "cor4.5") return report(verify_min_angle(base, bound(kLevel1Bound)));
  if (a.claim == "thm5.2") return report(verify_lap_uniqueness_level2(base, bound(kMaximalLevel2Bound)));
  if (a.claim == "thm5.3") return report(verify_lap_level3_convex(base, bound(kLevel3Bound)));
  if (a.claim == "lem2.6") return report(verify_maximal_counts(base, bound(kMaximalLevel2Bound)));
  if (a.claim == "conjB") return report(check_local_angle_conjecture(base, a.order, bound(kMaximalLevel2Bound)));
  if (a.claim == "conjC") return report(check_conjecture_maximal_maximum(base, a.order, bound(kMaximalLevel2Bound)));
  throw InputError(0, "unknown claim '" + a.claim + "'");
}

int cmd_enumerate(const std::string& path, const std::string& level, bool count_only) {
  const auto base = cli::load_point_set(path);
  const std::size_t limit = max_cells_from_env();
  auto emit_count = [&](std::uint64_t count) {
    if (limit != kUnlimited && count > limit)
      throw EnumerationLimit(std::to_string(count) + " members exceed HYPERDEL_MAX_CELLS=" + std::to_string(limit));
    if (g_json) emit({{"command", "enumerate"}, {"level", level}, {"count", count}});
    else std::cout << count << '\n';
    return kSuccess;
  };
  if (level == "1") {
    if (count_only) return emit_count(count_triangulations(*base, base->all_mask()));
    const auto all = enumerate_triangulations(base, base->all_mask());
    if (all.size() > limit) throw EnumerationLimit("more than " + std::to_string(limit) + " triangulations");
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::vector<std::string> tris;
      for (const auto& t : all[i].triangles()) tris.push_back(level1_text(t));
      if (g_json) {
        emit({{"command", "enumerate"}, {"level", level}, {"index", i}, {"triangles", tris}});
      } else {
        std::cout << "# member " << i << '\n';
        for (const auto& t : tris) std::cout << "  " << t << '\n';
      }
    }
    if (g_json) emit({{"command", "enumerate"}, {"level", level}, {"count", all.size()}});
    else std::cout << all.size() << " triangulations\n";
    return kSuccess;
  }
  if (level == "2" && count_only) return emit_count(count_level2(base, false));
  if (level == "2max" && count_only) return emit_count(count_level2(base, true));
  std::vector<Hypertriangulation> members;
  if (level == "2") members = enumerate_complete_level2(base, limit);
  else if (level == "2max") members = enumerate_maximal_level2(base, limit);
  else if (level == "3convex") members = enumerate_level3_convex(base, limit);
  else throw InputError(0, "unknown level '" + level + "'");
  if (count_only) return emit_count(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (g_json) {
      auto j = hyper_json(members[i]);
      j["command"] = "enumerate";
      j["index"] = i;
      emit(j);
    } else {
      std::cout << "# member " << i << '\n';
      print_hyper(members[i]);
    }
  }
  if (g_json) emit({{"command", "enumerate"}, {"level", level}, {"count", members.size()}});
  else std::cout << members.size() << " hypertriangulations\n";
  return kSuccess;
}

int cmd_svg(const std::string& path, int order, const std::string& out_path, bool labels) {
  const auto base = cli::load_point_set(path);
  if (order < 1 || order >= static_cast<int>(base->size()))
    throw InputError(0, "order must lie in 1.." + std::to_string(base->size() - 1));
  const std::string svg = cli::render_svg(order_k_delaunay(base, order), {labels});
  if (out_path == "-") {
    std::cout << svg;
    return kSuccess;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError(0, "cannot write '" + out_path + "'");
  out << svg;
  if (g_json) emit({{"command", "svg"}, {"order", order}, {"output", out_path}});
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-k Delaunay triangulations and level-k hypertriangulations in exact arithmetic"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Line-delimited JSON output");
  app.fallthrough();

  std::string path;
  int order = 1;
  std::optional<int> lap_order;
  std::string spec;
  std::string level;
  bool count_only = false;
  std::string out_path;
  bool labels = false;
  VerifyArgs va;

  auto* validate = app.add_subcommand("validate", "Check that a point file is generic");
  validate->add_option("file", path, "Point file")->required();

  auto* del = app.add_subcommand("delaunay", "Order-k Delaunay triangulation");
  del->add_option("file", path, "Point file")->required();
  del->add_option("--order", order, "Order k")->capture_default_str();

  auto* lap = app.add_subcommand("lap-check", "Local angle property of order-k Delaunay or a given triangulation");
  lap->add_option("file", path, "Point file")->required();
  lap->add_option("--order", lap_order, "Order k");
  lap->add_option("--triangulation", spec, "Level-1 triangulation, e.g. 0-1-2,0-2-3");

  auto* av = app.add_subcommand("angle-vector", "Sorted angle vector");
  av->add_option("file", path, "Point file")->required();
  av->add_option("--triangulation", spec, "Level-1 triangulation, e.g. 0-1-2,0-2-3");
  av->add_option("--order", order, "Order of the Delaunay triangulation used without --triangulation")
      ->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Check a claim on a point set");
  ver->add_option("claim", va.claim, "thm3.3 thm4.3 cor4.5 thm5.2 thm5.3 lem2.6 conjB conjC cex-order3 search-fig5")
      ->required()
      ->check(CLI::IsMember(
          {"thm3.3", "thm4.3", "cor4.5", "thm5.2", "thm5.3", "lem2.6", "conjB", "conjC", "cex-order3", "search-fig5"}));
  ver->add_option("file", va.path, "Point file (unused by cex-order3 and search-fig5)");
  ver->add_option("--bound", va.bound, "Largest point count to enumerate");
  ver->add_option("--seed", va.seed, "Sampler seed")->capture_default_str();
  ver->add_option("--order", va.order, "Level k for conjB and conjC")->capture_default_str();
  ver->add_option("--samples", va.search.samples, "search-fig5: point sets to sample")->capture_default_str();
  ver->add_option("--points", va.search.n, "search-fig5: points per set")->capture_default_str();
  ver->add_option("--range", va.search.range, "search-fig5: coordinate range")->capture_default_str();
  ver->add_option("--budget", va.search.time_budget_seconds, "search-fig5: time budget in seconds")
      ->capture_default_str();

  auto* en = app.add_subcommand("enumerate", "Enumerate triangulations or hypertriangulations");
  en->add_option("file", path, "Point file")->required();
  en->add_option("--level", level, "1, 2 (complete), 2max (maximal) or 3convex")
      ->required()
      ->check(CLI::IsMember({"1", "2", "2max", "3convex"}));
  en->add_flag("--count-only", count_only, "Print only the number of members");

  auto* svg = app.add_subcommand("svg", "Draw the order-k Delaunay triangulation");
  svg->add_option("file", path, "Point file")->required();
  svg->add_option("--order", order, "Order k")->capture_default_str();
  svg->add_option("-o,--output", out_path, "Output file, '-' for stdout")->required();
  svg->add_flag("--labels", labels, "Draw vertex labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kSuccess : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*validate) return cmd_validate(path);
    if (*del) return cmd_delaunay(path, order);
    if (*lap) return cmd_lap_check(path, lap_order, spec);
    if (*av) return cmd_angle_vector(path, spec, order);
    if (*ver) return cmd_verify(va);
    if (*en) return cmd_enumerate(path, level, count_only);
    if (*svg) return cmd_svg(path, order, out_path, labels);
  } catch (const InputError& e) {
    return fail(command, kUsage, e.what());
  } catch (const EnumerationLimit& e) {
    return fail(command, kUnresolved, e.what());
  } catch (const GeometryError& e) {
    return fail(command, kUsage, e.what());
  }
  return kUsage;
}
