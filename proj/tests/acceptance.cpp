// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "hyperdel/verify.hpp"

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

using namespace hyperdel;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

int g_failed = 0;

void print(int id, const std::string& title, const Outcome& o, double seconds) {
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << o.summary
            << "; " << seconds << " s]\n";
  for (const auto& f : o.failures) std::cout << "    " << f << '\n';
  if (!o.pass) ++g_failed;
}

template <class F>
void run(int id, const std::string& title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.failures.push_back(std::string("exception: ") + e.what());
  }
  print(id, title, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

std::string failure_of(const VerificationReport& r) {
  std::string out = r.claim + " " + status_name(r.status) + " on " + r.instance;
  if (!r.note.empty()) out += " (" + r.note + ")";
  if (!r.witness.empty()) out += ": " + r.witness.front();
  return out;
}

}  // namespace

int main() {
  std::cout << std::unitbuf;
  Rng rng(kSeed);
  std::cout << "acceptance suite, seed " << kSeed << '\n';

  // Criteria 1-3 and 11 share 60 random sets with 4 <= n <= 9.
  std::vector<std::shared_ptr<const PointSet>> general;
  for (int i = 0; i < 60; ++i) general.push_back(random_generic_points(rng, 4 + i % 6, 20 + 10 * (i % 4)));
  // Criteria 4-5: 24 sets with 4 <= n <= 7, half of them at n = 7.
  std::vector<std::shared_ptr<const PointSet>> optimality;
  for (int i = 0; i < 24; ++i) optimality.push_back(random_generic_points(rng, i % 2 == 0 ? 7 : 4 + i % 6 / 2, 40));
  // Criterion 6: 20 sets with 4 <= n <= 6.
  std::vector<std::shared_ptr<const PointSet>> maximal;
  for (int i = 0; i < 20; ++i) maximal.push_back(random_generic_points(rng, 4 + i % 3, 40));
  // Criterion 7: 20 convex sets with 4 <= n <= 6.
  std::vector<std::shared_ptr<const PointSet>> convex;
  for (int i = 0; i < 20; ++i) convex.push_back(random_convex_points(rng, 4 + i % 3, 60));

  LemmaAudit audit(kSeed);

  run(1, "order-k Delaunay tiles the k-set hull exactly", [&](Outcome& o) {
    std::uint64_t checked = 0;
    for (const auto& base : general) {
      const auto r = verify_order_k_tiling(base);
      checked += r.instances;
      o.require(r.status == Status::Verified, failure_of(r));
      for (int k = 1; k < static_cast<int>(base->size()); ++k) audit.lap_structure(order_k_delaunay(base, k));
    }
    o.summary = std::to_string(general.size()) + " sets, " + std::to_string(checked) + " (set, k) pairs";
  });

  run(2, "order-k Delaunay has the local angle property", [&](Outcome& o) {
    std::uint64_t edges = 0;
    for (const auto& base : general) {
      const auto r = verify_lap_all_orders(base);
      edges += std::stoull(r.details.at("interior_edges"));
      o.require(r.status == Status::Verified, failure_of(r));
    }
    o.summary = std::to_string(edges) + " interior edges, zero violations required";
  });

  run(3, "blacks of order k+1 are the aged whites of order k", [&](Outcome& o) {
    std::uint64_t pairs = 0;
    for (const auto& base : general) {
      const auto r = verify_aging_chain(base);
      pairs += r.instances;
      o.require(r.status == Status::Verified, failure_of(r));
    }
    o.summary = std::to_string(pairs) + " consecutive order pairs";
  });

  run(4, "angle vectors never exceed the Delaunay ones at level 2", [&](Outcome& o) {
    std::uint64_t triangulations = 0, members = 0, ties = 0;
    for (const auto& base : optimality) {
      const auto r = verify_angle_optimality(base);
      o.require(r.status == Status::Verified, failure_of(r));
      if (r.status != Status::Verified) continue;
      triangulations += std::stoull(r.details.at("triangulations_less")) + std::stoull(r.details.at("triangulations_equal"));
      members += std::stoull(r.details.at("level2_members"));
      ties += std::stoull(r.details.at("non_delaunay_equal"));
      for (const auto& p : enumerate_triangulations(base, base->all_mask())) {
        const auto f = f_of(p);
        audit.star_convex(f.phi);
        audit.splitting(p);
        audit.shared_interior(f.phi);
        audit.white_union(f);
      }
      for (const auto& h : enumerate_complete_level2(base)) audit.lap_structure(h);
    }
    o.summary = std::to_string(optimality.size()) + " sets, " + std::to_string(triangulations) +
                " triangulations, " + std::to_string(members) + " complete level-2 members, " + std::to_string(ties) +
                " non-Delaunay ties";
  });

  run(5, "minimum angle never exceeds the Delaunay one", [&](Outcome& o) {
    std::uint64_t checked = 0;
    for (const auto& base : optimality) {
      const auto r = verify_min_angle(base);
      checked += r.instances;
      o.require(r.status == Status::Verified, failure_of(r));
    }
    o.summary = std::to_string(checked) + " structures compared";
  });

  std::vector<std::set<std::size_t>> maximal_counts;
  run(6, "order-2 Delaunay is the unique maximal level-2 member with the local angle property", [&](Outcome& o) {
    std::uint64_t members = 0;
    for (const auto& base : maximal) {
      const auto r = verify_lap_uniqueness_level2(base);
      members += r.instances;
      o.require(r.status == Status::Verified, failure_of(r));
      auto& counts = maximal_counts.emplace_back();
      for (const auto& h : enumerate_maximal_level2(base)) {
        counts.insert(h.size());
        audit.lap_structure(h);
      }
    }
    o.summary = std::to_string(maximal.size()) + " sets, " + std::to_string(members) + " maximal members";
  });

  run(7, "order-3 Delaunay is the unique convex level-3 member with the local angle property", [&](Outcome& o) {
    std::uint64_t members = 0;
    for (const auto& base : convex) {
      const auto r = verify_lap_level3_convex(base);
      members += r.instances;
      o.require(r.status == Status::Verified, failure_of(r));
      for (const auto& h : enumerate_level3_convex(base)) audit.lap_structure(h);
    }
    o.summary = std::to_string(convex.size()) + " convex sets, " + std::to_string(members) + " level-3 members";
  });

  run(8, "maximal level-2 members share one triangle count", [&](Outcome& o) {
    for (std::size_t i = 0; i < maximal.size(); ++i) {
      const auto r = verify_maximal_counts(maximal[i]);
      o.require(r.status == Status::Verified, failure_of(r));
      o.require(maximal_counts.size() > i && maximal_counts[i].size() == 1,
                "criterion 6 family of " + describe_points(*maximal[i]) + " has several counts");
    }
    const auto quad = std::make_shared<const PointSet>(PointSet::from_points({{0, 0}, {4, 0}, {5, 3}, {1, 4}}));
    auto q = verify_maximal_counts(quad);
    o.require(q.status == Status::Verified && q.details.at("maximal_counts") == "4",
              "four convex points: count " + q.details["maximal_counts"] + ", expected 4");
    // Value from the exhaustive tiling search: 3 black triangles plus the one white triangle of the interior point.
    const auto fan = std::make_shared<const PointSet>(PointSet::from_points({{0, 0}, {4, 0}, {0, 4}, {1, 1}}));
    auto f = verify_maximal_counts(fan);
    std::set<std::size_t> oracle;
    for (const auto& h : maximal_members(enumerate_all_hypertriangulations(fan, 2))) oracle.insert(h.size());
    o.require(oracle == std::set<std::size_t>{4}, "tiling search disagrees on the triangle with an interior point");
    o.require(f.status == Status::Verified && f.details.at("maximal_counts") == "4",
              "triangle with interior point: count " + f.details["maximal_counts"] + ", expected 4");
    o.summary = std::to_string(maximal.size()) + " families; four convex points -> " + q.details["maximal_counts"] +
                "; triangle with interior point -> " + f.details["maximal_counts"];
  });

  run(9, "order-3 Delaunay of four convex points has the smaller angle vector", [&](Outcome& o) {
    auto r = reproduce_order3_counterexample();
    o.require(r.status == Status::Refuted, failure_of(r));
    o.require(r.details["V(D3)_vs_V(P3)"] == "Less", "V(D3) vs V(P3) is " + r.details["V(D3)_vs_V(P3)"]);
    o.require(r.details["V(D3)_equals_V(P)"] == "true", "V(D3) differs from V(P)");
    o.require(r.details["V(P3)_equals_V(D)"] == "true", "V(P3) differs from V(D)");
    o.require(r.details["D3_blacks_are_copies_of_P"] == "true", "blacks of D3 are not copies of P");
    o.summary = "V(D3) " + r.details["V(D3)_vs_V(P3)"] + " V(P3)";
  });

  run(10, "structural lemma suites over all generated structures", [&](Outcome& o) {
    std::ostringstream s;
    for (const auto& [name, tally] : audit.tallies()) {
      s << name << " " << tally.checked << "/" << tally.violations.size() << " ";
      o.require(tally.checked > 0, name + " was never exercised");
      for (const auto& v : tally.violations) o.require(false, name + ": " + v);
    }
    o.require(audit.tallies().size() == 7, "expected seven lemma suites");
    o.require(audit.unresolved_angle_sums() == 0, "undecided black angle sums");
    s << "unresolved-sums 0";
    o.summary = s.str();
  });

  run(11, "f(Delaunay) equals order-2 Delaunay as a labeled set", [&](Outcome& o) {
    for (const auto& base : general) {
      const auto r = verify_cross_construction(base);
      o.require(r.status == Status::Verified, failure_of(r));
    }
    o.summary = std::to_string(general.size()) + " sets";
  });

  run(12, "search for an incomplete maximal level-2 member beating the Delaunay minimum angle", [&](Outcome& o) {
    const SearchConfig config{};
    auto r = search_counterexample(config);
    const bool ok = r.status == Status::Refuted ? !r.witness.empty() : r.details.count("sets_sampled") == 1;
    o.require(ok, failure_of(r));
    o.summary = std::string(status_name(r.status)) + ", n=" + std::to_string(config.n) +
                ", seed=" + std::to_string(config.seed) + ", sets=" + r.details["sets_sampled"];
    if (r.status == Status::Refuted)
      o.summary += ", min angle " + r.details["witness_min_angle_approx_degrees"] + " deg (approx) vs Delaunay " +
                   r.details["delaunay_min_angle_approx_degrees"] + " deg (approx) on " + r.instance;
  });

  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criteria failed") << '\n';
  return g_failed == 0 ? 0 : 1;
}
