#pragma once

#include "hyperdel/angle_analysis.hpp"

#include <map>
#include <random>

namespace hyperdel {

enum class Status { Verified, Refuted, Unresolved };
const char* status_name(Status status);

struct VerificationReport {
  std::string claim;
  std::string instance;
  Status status = Status::Unresolved;
  /// Offending structure, one line per item. Present whenever status is Refuted.
  std::vector<std::string> witness;
  /// Claim-specific facts in exact form, e.g. comparison tallies.
  std::map<std::string, std::string> details;
  std::uint64_t instances = 0;
  double seconds = 0;
  std::string note;
};

std::string describe_points(const PointSet& base);

// ---------------------------------------------------------------------------
// Samplers. Integer coordinates in [0, range], redrawn until generic.

using Rng = std::mt19937_64;

std::shared_ptr<const PointSet> random_generic_points(Rng& rng, int n, int range);
/// Generic and in convex position; points are rounded from a random circle.
std::shared_ptr<const PointSet> random_convex_points(Rng& rng, int n, int range);

// ---------------------------------------------------------------------------
// Harnesses

/// Default enumeration bounds (point counts).
inline constexpr int kLevel1Bound = 7;
inline constexpr int kMaximalLevel2Bound = 6;
inline constexpr int kLevel3Bound = 6;
inline constexpr int kExhaustiveBound = 5;

/// Every order-k Delaunay triangulation tiles conv(A^(k)).
VerificationReport verify_order_k_tiling(const std::shared_ptr<const PointSet>& base);
/// Every order-k Delaunay triangulation has the local angle property.
VerificationReport verify_lap_all_orders(const std::shared_ptr<const PointSet>& base);
/// Black triangles of order k+1 are the aged white triangles of order k.
VerificationReport verify_aging_chain(const std::shared_ptr<const PointSet>& base);
/// f(delaunay(A)) equals the order-2 Delaunay triangulation as a labeled set.
VerificationReport verify_cross_construction(const std::shared_ptr<const PointSet>& base);

/// V(f(P)) <= V(f(D)) for every complete P, and V(H) <= V(order-2 Delaunay) for every complete level-2 H.
VerificationReport verify_angle_optimality(const std::shared_ptr<const PointSet>& base, int bound = kLevel1Bound);
/// The minimum angle of f(P), and of every complete level-2 H, never exceeds that of f(D).
VerificationReport verify_min_angle(const std::shared_ptr<const PointSet>& base, int bound = kLevel1Bound);
/// Exactly one maximal level-2 hypertriangulation has the local angle property: order-2 Delaunay.
VerificationReport verify_lap_uniqueness_level2(const std::shared_ptr<const PointSet>& base,
                                                int bound = kMaximalLevel2Bound);
/// Exactly one level-3 hypertriangulation of a convex set has the local angle property: order-3 Delaunay.
VerificationReport verify_lap_level3_convex(const std::shared_ptr<const PointSet>& base, int bound = kLevel3Bound);
/// All maximal level-2 hypertriangulations share one triangle count, attained by every complete one.
VerificationReport verify_maximal_counts(const std::shared_ptr<const PointSet>& base, int bound = kMaximalLevel2Bound);

/// The built-in convex quadrilateral used by the order-3 counterexample.
std::shared_ptr<const PointSet> order3_counterexample_points();
/// Refuted when the order-3 extension of angle optimality fails on the built-in quadrilateral.
VerificationReport reproduce_order3_counterexample();

struct SearchConfig {
  int n = 9;
  int range = 30;
  std::uint64_t samples = 50;
  std::uint64_t seed = 1;
  double time_budget_seconds = 120;
};

/// Looks for a maximal but incomplete level-2 hypertriangulation whose minimum
/// angle beats order-2 Delaunay. Refuted (with a re-validated witness) on success.
VerificationReport search_counterexample(const SearchConfig& config);

/// Every maximal level-k hypertriangulation has the same number of triangles.
VerificationReport check_conjecture_maximal_maximum(const std::shared_ptr<const PointSet>& base, int k,
                                                    int bound = kMaximalLevel2Bound);
/// Among level-k hypertriangulations with the local angle property, the one with the
/// most triangles is unique and is order-k Delaunay.
VerificationReport check_local_angle_conjecture(const std::shared_ptr<const PointSet>& base, int k,
                                                int bound = kMaximalLevel2Bound);

// ---------------------------------------------------------------------------
// Lemma audits

struct LemmaTally {
  std::uint64_t checked = 0;
  std::vector<std::string> violations;
};

/// Accumulates structural lemma checks over many generated objects.
class LemmaAudit {
 public:
  explicit LemmaAudit(std::uint64_t seed = 7) : rng_(seed) {}

  /// Each white triangle uvw of x contains x or is in convex position with it.
  void star_convex(const Phi2& phi);
  /// Vertices and edges missing a random line form at most two components, one per side.
  void splitting(const Triangulation& p, int lines = 2);
  /// Each white triangle belongs to the white triangulation of exactly one point.
  void shared_interior(const Phi2& phi);
  /// The union of white level-2 triangles of x is the shrunken star clipped to conv(A^(2)).
  void white_union(const FResult& f);
  /// Black regions are convex with no inner vertices (needs bb only); black angle sums
  /// stay below pi and the inverse-aged blacks satisfy ww (needs the full property).
  void lap_structure(const Hypertriangulation& h);

  [[nodiscard]] const std::map<std::string, LemmaTally>& tallies() const { return tallies_; }
  [[nodiscard]] bool clean() const;
  /// Exact angle sums never leave a sign undecided; kept for reporting.
  [[nodiscard]] std::uint64_t unresolved_angle_sums() const { return 0; }

 private:
  LemmaTally& tally(const std::string& name) { return tallies_[name]; }

  Rng rng_;
  std::map<std::string, LemmaTally> tallies_;
};

/// Level-1 triangles similar to the triangles of a level-2 hypertriangulation, one per triangle.
TriangleList level1_shapes(const Hypertriangulation& h);

}  // namespace hyperdel
