#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "redblue/bucket_grid.hpp"
#include "redblue/separated.hpp"

// Implicit Voronoi decomposition of the torus with respect to a separated
// set: nearest-site queries, fixed-radius neighbor queries, and on-demand
// half-space descriptions of cells. Cells are never materialized as
// polytopes; membership predicates are all the downstream arguments need.

namespace redblue {

// {x : normal . x <= offset} in Euclidean coordinates centered at the cell's
// site. normal is the displacement to the neighboring site, offset is half
// its squared length, so the boundary is the perpendicular bisector.
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0.0;
};

struct NearestResult {
  std::vector<std::uint32_t> ids;  // all sites within tie_tol of the minimum
  double distance = 0.0;
};

class PeriodicIndex {
 public:
  explicit PeriodicIndex(std::shared_ptr<const SeparatedSet> set);

  const SeparatedSet& set() const { return *set_; }
  const std::shared_ptr<const SeparatedSet>& set_ptr() const { return set_; }

  NearestResult nearest(std::span<const double> q, double tie_tol = kDistanceTol) const;

  // Members other than `member` within torus distance <= s, ascending ids.
  std::vector<std::uint32_t> neighbors_within(std::uint32_t member, double s) const;
  std::vector<std::uint32_t> neighbors_within(std::span<const double> q, double s,
                                              std::uint32_t exclude = detail::kNoExclude) const;
  std::size_t neighbor_count(std::uint32_t member, double s) const;

  // One half-space per neighbor within twice the separation; sound only for
  // covering-certified sets (cell radius <= separation). Throws otherwise.
  std::vector<HalfSpace> cell_halfspaces(std::uint32_t member) const;

  const detail::BucketGrid& grid() const { return grid_; }

 private:
  std::shared_ptr<const SeparatedSet> set_;
  detail::BucketGrid grid_;
};

inline PeriodicIndex build_index(std::shared_ptr<const SeparatedSet> set) {
  return PeriodicIndex(std::move(set));
}

// All inequalities hold within tol (distances to the bisector hyperplanes).
bool cell_contains(const std::vector<HalfSpace>& halfspaces,
                   std::span<const double> local, double tol = kDistanceTol);

}  // namespace redblue
