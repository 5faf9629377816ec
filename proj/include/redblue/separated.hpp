#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "redblue/torus.hpp"

// Maximal t-separated point sets on the torus, their covering certificates,
// and the packing bounds they obey.

namespace redblue {

// Result of the grid covering check. A passing certificate is a sound proof
// that every torus point lies within `radius` of the set: each grid point of
// pitch g was verified to be within radius - g*sqrt(n)/2, and no torus point
// is farther than g*sqrt(n)/2 from the grid. With refinement enabled, grid
// cells that fail only by slack are subdivided recursively and certified by
// the same Lipschitz argument at finer resolution; `failures` then counts the
// cells that could not be certified either way.
struct CoveringCertificate {
  bool pass = false;
  double radius = 0.0;
  double grid_pitch = 0.0;
  double slack = 0.0;  // grid_pitch * sqrt(dim) / 2
  std::uint64_t grid_points = 0;
  std::uint64_t failures = 0;
  bool refined = false;               // local subdivision was used
  std::uint64_t refined_cells = 0;    // base cells certified by subdivision
  double worst_distance = 0.0;
  std::vector<double> worst_point;
};

enum class BuildStrategy { RandomDarts, GridGreedy };

struct BuildOptions {
  BuildStrategy strategy = BuildStrategy::RandomDarts;
  // dart throwing stops after failure_multiplier * max(|P|, 1) consecutive
  // rejections; the covering loop then finishes the job
  double failure_multiplier = 1e4;
  double grid_pitch = 0.0;   // 0 picks t / (4 sqrt(n)), slack t/8
  int refine_depth = 26;     // subdivision depth for slack-only cells
  bool certify = true;
  int workers = 0;  // certification sweep only; construction is sequential
};

class SeparatedSet {
 public:
  SeparatedSet(TorusSpec spec, double separation, std::vector<double> flat_coords);

  // Validates wrapping and (optionally) pairwise separation >= t - tol.
  static SeparatedSet from_points(TorusSpec spec, double separation,
                                  const std::vector<std::vector<double>>& points,
                                  bool check_separation = true,
                                  double tol = kDistanceTol);

  const TorusSpec& spec() const { return spec_; }
  double separation() const { return separation_; }
  std::size_t size() const { return count_; }
  int dim() const { return spec_.dim; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * spec_.dim, static_cast<std::size_t>(spec_.dim)};
  }
  const std::vector<double>& flat_coords() const { return coords_; }
  std::vector<std::vector<double>> points() const;

  const std::optional<CoveringCertificate>& certificate() const { return certificate_; }
  void set_certificate(CoveringCertificate cert) { certificate_ = std::move(cert); }
  // true when a passing covering certificate at radius <= separation is attached
  bool certified_maximal() const;

 private:
  TorusSpec spec_;
  double separation_ = 0.0;
  std::size_t count_ = 0;
  std::vector<double> coords_;  // count * dim, row-major, wrapped
  std::optional<CoveringCertificate> certificate_;
};

// Build a t-separated set that is maximal (certified by covering radius <= t).
// Deterministic in (seed, strategy, options). Throws std::runtime_error if
// certification cannot be achieved within the refinement budget.
SeparatedSet build_maximal_separated(const TorusSpec& spec, double separation,
                                     std::uint64_t seed, const BuildOptions& opts = {});

// Grid sweep: PASS iff every grid point of pitch `grid_pitch` lies within
// radius - slack of the set. Throws std::invalid_argument when the grid is
// too coarse (slack >= radius). With refine = true, cells failing only by
// grid slack are certified by local subdivision instead of failing outright.
CoveringCertificate verify_covering(const SeparatedSet& set, double radius,
                                    double grid_pitch, int workers = 0,
                                    bool refine = false, int refine_depth = 26);

// Exact min over all pairs (bucket-grid assisted); +inf for fewer than 2 points.
double min_pairwise_distance(const SeparatedSet& set);

inline bool verify_separation(const SeparatedSet& set, double tol = kDistanceTol) {
  return min_pairwise_distance(set) >= set.separation() - tol;
}

// (2 s / t + 1)^dim — the max number of points of a t-separated set within
// distance s of any point.
double packing_bound(double separation, double query_radius, int dim);

// Exact number of members within torus distance <= s of p.
std::size_t count_within(const SeparatedSet& set, std::span<const double> p, double s);

// Greedy s-separated subset of a 1-separated Euclidean point list, processed
// in input order. Returns indices into `points`. Guarantees
// |result| >= ceil(|points| / (2 s + 1)^dim). Throws if the input is not
// 1-separated.
std::vector<std::size_t> greedy_separated_subset(
    const std::vector<std::vector<double>>& points, double min_output_separation,
    double tol = kDistanceTol);

// Lemma-style cardinality bounds for maximal 1/3-separated sets; see
// bounds::point_count_bound for the formulas.
struct SetSizeBound {
  double volume_ratio;
  double simplified;
};
SetSizeBound max_count_bound(const TorusSpec& spec);

}  // namespace redblue
