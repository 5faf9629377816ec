#include "redblue/voronoi.hpp"

#include <cmath>
#include <stdexcept>

namespace redblue {

PeriodicIndex::PeriodicIndex(std::shared_ptr<const SeparatedSet> set)
    : set_(std::move(set)),
      grid_(set_->spec(), std::max(set_->separation(), set_->spec().period / 64.0)) {
  if (set_->size() == 0) throw std::invalid_argument("index over an empty set");
  grid_.bind(&set_->flat_coords());
  for (std::uint32_t i = 0; i < set_->size(); ++i) grid_.insert(i);
}

NearestResult PeriodicIndex::nearest(std::span<const double> q, double tie_tol) const {
  if (static_cast<int>(q.size()) != set_->dim()) {
    throw std::invalid_argument("nearest: dimension mismatch");
  }
  NearestResult r;
  r.distance = grid_.nearest_ids(q.data(), tie_tol, r.ids);
  return r;
}

std::vector<std::uint32_t> PeriodicIndex::neighbors_within(std::uint32_t member,
                                                           double s) const {
  std::vector<std::uint32_t> out;
  grid_.collect_within(set_->point(member).data(), s, member, out);
  return out;
}

std::vector<std::uint32_t> PeriodicIndex::neighbors_within(std::span<const double> q,
                                                           double s,
                                                           std::uint32_t exclude) const {
  std::vector<std::uint32_t> out;
  grid_.collect_within(q.data(), s, exclude, out);
  return out;
}

std::size_t PeriodicIndex::neighbor_count(std::uint32_t member, double s) const {
  return grid_.count_within(set_->point(member).data(), s, member);
}

std::vector<HalfSpace> PeriodicIndex::cell_halfspaces(std::uint32_t member) const {
  if (!set_->certified_maximal()) {
    throw std::logic_error(
        "cell_halfspaces requires a covering-certified set; cells of an "
        "uncertified set may extend past the separation radius");
  }
  const double t = set_->separation();
  const int dim = set_->dim();
  const double* site = set_->point(member).data();
  // any site whose cell touches this cell's boundary lies within 2t
  const auto neighbor_ids = neighbors_within(member, 2.0 * t + kDistanceTol);
  std::vector<HalfSpace> out;
  out.reserve(neighbor_ids.size());
  std::vector<double> delta(static_cast<std::size_t>(dim));
  for (std::uint32_t id : neighbor_ids) {
    nearest_delta(site, set_->point(id).data(), dim, set_->spec().period, delta.data());
    double norm_sq = 0.0;
    for (int a = 0; a < dim; ++a) norm_sq += delta[a] * delta[a];
    out.push_back(HalfSpace{delta, norm_sq / 2.0});
  }
  return out;
}

bool cell_contains(const std::vector<HalfSpace>& halfspaces,
                   std::span<const double> local, double tol) {
  for (const HalfSpace& h : halfspaces) {
    double dot = 0.0;
    double norm_sq = 0.0;
    for (std::size_t a = 0; a < h.normal.size(); ++a) {
      dot += h.normal[a] * local[a];
      norm_sq += h.normal[a] * h.normal[a];
    }
    // tol is a distance; scale by |normal| to compare in the dot's units
    if (dot > h.offset + tol * std::sqrt(norm_sq)) return false;
  }
  return true;
}

}  // namespace redblue
