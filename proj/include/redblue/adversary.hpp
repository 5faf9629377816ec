#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redblue/coloring.hpp"

// Attacks on a coloring: certify that no red unit-distance pair can exist,
// search for one anyway, and hunt for all-blue placements of unit-spaced
// collinear points or of a general 1-separated target set.

namespace redblue {

// Finite 1-separated target set in E^n.
class KSet {
 public:
  explicit KSet(std::vector<std::vector<double>> points, double tol = kDistanceTol);
  static KSet line(int m, int dim = 1);  // m collinear points at unit spacing

  const std::vector<std::vector<double>>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  int dim() const { return dim_; }
  double diameter() const { return diameter_; }

 private:
  std::vector<std::vector<double>> points_;
  int dim_ = 0;
  double diameter_ = 0.0;
};

// Isometry g(p) = rotation * p + translation (rotation may include a
// reflection). rotation is row-major dim x dim.
struct Placement {
  std::vector<double> rotation;
  std::vector<double> translation;
  std::uint64_t trial = 0;

  std::vector<double> apply(const std::vector<double>& p) const;
  std::vector<std::vector<double>> apply(const KSet& k) const;
  double orthogonality_error() const;  // max |R^T R - I| entry
};

struct LineQuery {
  std::vector<double> base;
  std::vector<double> direction;  // unit vector
  int m = 0;
  std::uint64_t trial = 0;

  std::vector<double> point(int i) const;  // base + i * direction
};

struct RedPairCertificate {
  bool pass = false;
  bool covering_ok = false;      // certified cell radius <= separation
  bool cell_diameter_ok = false; // 2 * cell radius < 1 (same-cell pairs)
  bool s_separation_ok = false;  // min S distance > survival radius + tol
                                 // and exceeds 1 + 2 * cell radius (cross-cell pairs)
  bool period_ok = false;        // period - 2 * cell radius > 1 (periodic images)
  double cell_radius = 0.0;
  double min_s_distance = 0.0;
  double period = 0.0;
  double tie_tol = 0.0;
  std::string failure;  // empty when pass
};

// Sound certificate that the periodic coloring contains no two red points at
// Euclidean distance exactly 1.
RedPairCertificate red_pair_certificate(const Coloring& coloring);

struct RedPair {
  std::vector<double> a;
  std::vector<double> b;
  double distance = 0.0;
  std::uint64_t trial = 0;
};

// Adversarial complement of the certificate. Each trial rejection-samples a
// red base point, probes a uniform unit step, and refines by aiming a unit
// step at the nearest red cell. Returns the violation with the smallest
// trial index, identically for any worker count. Expected empty whenever the
// certificate passes.
std::optional<RedPair> red_pair_search(const Coloring& coloring, std::uint64_t trials,
                                       std::uint64_t seed, int workers = 0);

// Monte Carlo hunt for an all-blue run of m unit-spaced collinear points,
// with bases drawn from the side-3R box and uniform random directions.
std::optional<LineQuery> blue_line_search(const Coloring& coloring, int m,
                                          std::uint64_t trials, std::uint64_t seed,
                                          int workers = 0);

struct BlueRunResult {
  int max_m = 0;         // largest run found/proved (lower bound when capped)
  bool unbounded = false; // proven: runs of every length exist
  bool capped = false;    // probe budget m_cap reached
};

// Largest m for which blue_line_search succeeds within the trial budget,
// found by doubling then binary search. An empty S short-circuits to the
// unbounded sentinel.
BlueRunResult longest_blue_run(const Coloring& coloring, std::uint64_t trials,
                               std::uint64_t seed, int m_cap = 4096, int workers = 0);

// Exact 1-D oracle: the red set is a finite union of closed arcs, and an
// all-blue run of length m exists iff the arcs shifted by -0..-(m-1) leave a
// gap on the circle. Detects exact repetition for (near-)rational periods
// and then proves unboundedness. Throws unless dim == 1.
BlueRunResult exact_blue_runs_1d(const Coloring& coloring, int m_cap = 100000);

// Random-isometry search for an all-blue copy of K: Haar-random orthogonal
// frames (Gram-Schmidt of a Gaussian matrix) and translations in the
// side-3R box. Returned placements re-validate: orthogonal within 1e-10,
// pairwise distances preserved within 1e-9, all points blue.
std::optional<Placement> blue_placement_search(const Coloring& coloring, const KSet& k,
                                               std::uint64_t trials, std::uint64_t seed,
                                               int workers = 0);

}  // namespace redblue
