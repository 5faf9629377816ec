#include "redblue/separated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "redblue/bounds.hpp"
#include "redblue/bucket_grid.hpp"
#include "redblue/parallel.hpp"
#include "redblue/rng.hpp"

namespace redblue {

namespace {

// Insertion admissibility is checked at full separation; the knife-edge
// allowance below only applies to ascended hole centers whose distance
// converges to the separation from below (e.g. antipodal configurations).
constexpr double kKnifeEdge = 1e-12;

struct GridScan {
  CoveringCertificate cert;
  std::vector<std::uint64_t> failing;  // ascending grid indices, only when collected
  std::vector<double> leaf_failures;   // flat centers of uncertifiable leaves
};

void decode_grid_point(std::uint64_t index, int dim, std::uint64_t per_axis,
                       double pitch, double* out) {
  for (int a = dim - 1; a >= 0; --a) {
    out[a] = static_cast<double>(index % per_axis) * pitch;
    index /= per_axis;
  }
}

// Certify that every point of the cube with the given center and per-axis
// half edge lies within `radius` of the set, by recursive bisection: a cube
// passes outright when center distance + half diagonal <= radius, and is
// hopeless when center distance - half diagonal > radius. Centers of leaf
// failures are collected; they pin down deep holes to within the leaf
// resolution and double as insertion candidates for the builder.
bool certify_cube(const TorusSpec& spec, const detail::BucketGrid& grid,
                  double* center, double half_edge, double radius, int depth_left,
                  std::uint64_t& node_budget, std::vector<double>* leaf_failures) {
  const double half_diag = half_edge * std::sqrt(static_cast<double>(spec.dim));
  const double d = grid.nearest_distance(center);
  if (d + half_diag <= radius) return true;
  const auto record = [&] {
    if (leaf_failures && leaf_failures->size() < 1024 * static_cast<std::size_t>(spec.dim)) {
      leaf_failures->insert(leaf_failures->end(), center, center + spec.dim);
    }
  };
  if (d - half_diag > radius) {
    record();
    return false;
  }
  if (depth_left <= 0 || node_budget == 0) {
    record();
    return false;
  }
  --node_budget;
  const std::uint64_t children = 1ull << spec.dim;
  double child[detail::BucketGrid::kMaxDim];
  bool ok = true;
  for (std::uint64_t mask = 0; mask < children; ++mask) {
    for (int a = 0; a < spec.dim; ++a) {
      const double off = (mask >> a) & 1 ? half_edge / 2.0 : -half_edge / 2.0;
      child[a] = wrap_coord(center[a] + off, spec.period);
    }
    if (!certify_cube(spec, grid, child, half_edge / 2.0, radius, depth_left - 1,
                      node_budget, leaf_failures)) {
      ok = false;
      if (!leaf_failures) return false;
    }
  }
  return ok;
}

// Sweep the certification grid. Grid points are spaced R/ceil(R/pitch) apart,
// so the recorded pitch never exceeds the requested one and wrap is exact.
GridScan covering_sweep(const TorusSpec& spec, const detail::BucketGrid& grid,
                        double radius, double pitch, int workers, bool collect_failing,
                        bool refine = false, int refine_depth = 26) {
  if (!(pitch > 0.0)) throw std::invalid_argument("grid pitch must be positive");
  const std::uint64_t per_axis = static_cast<std::uint64_t>(
      std::max<double>(1.0, std::ceil(spec.period / pitch)));
  const double actual_pitch = spec.period / static_cast<double>(per_axis);
  const double slack = actual_pitch * std::sqrt(static_cast<double>(spec.dim)) / 2.0;
  if (slack >= radius) {
    throw std::invalid_argument("covering grid too coarse: slack " +
                                std::to_string(slack) + " >= radius " +
                                std::to_string(radius));
  }
  const double threshold = radius - slack;

  std::uint64_t total = 1;
  for (int a = 0; a < spec.dim; ++a) total *= per_axis;

  GridScan scan;
  scan.cert.radius = radius;
  scan.cert.grid_pitch = actual_pitch;
  scan.cert.slack = slack;
  scan.cert.grid_points = total;

  workers = resolve_workers(workers);
  struct Local {
    std::uint64_t failures = 0;
    double worst = -1.0;
    std::uint64_t worst_index = 0;
  };
  std::vector<Local> locals(static_cast<std::size_t>(std::max(workers, 1)));

  parallel_chunks(total, workers, 8192, [&](std::uint64_t b, std::uint64_t e, int w) {
    Local& loc = locals[static_cast<std::size_t>(w)];
    double z[detail::BucketGrid::kMaxDim];
    for (std::uint64_t i = b; i < e; ++i) {
      decode_grid_point(i, spec.dim, per_axis, actual_pitch, z);
      if (grid.any_within(z, threshold)) continue;
      ++loc.failures;
      const double d = grid.nearest_distance(z);
      if (d > loc.worst || (d == loc.worst && i < loc.worst_index)) {
        loc.worst = d;
        loc.worst_index = i;
      }
    }
  });

  double worst = -1.0;
  std::uint64_t worst_index = 0;
  for (const Local& loc : locals) {
    scan.cert.failures += loc.failures;
    if (loc.worst > worst || (loc.worst == worst && loc.worst_index < worst_index)) {
      worst = loc.worst;
      worst_index = loc.worst_index;
    }
  }
  scan.cert.pass = scan.cert.failures == 0;
  if (!scan.cert.pass) {
    scan.cert.worst_distance = worst;
    scan.cert.worst_point.resize(static_cast<std::size_t>(spec.dim));
    decode_grid_point(worst_index, spec.dim, per_axis, actual_pitch,
                      scan.cert.worst_point.data());
    if (collect_failing || refine) {
      // deterministic ascending re-collection, independent of worker count
      constexpr std::size_t kFailCap = 1u << 16;
      double z[detail::BucketGrid::kMaxDim];
      for (std::uint64_t i = 0; i < total && scan.failing.size() < kFailCap; ++i) {
        decode_grid_point(i, spec.dim, per_axis, actual_pitch, z);
        if (!grid.any_within(z, threshold)) scan.failing.push_back(i);
      }
    }
    if (refine && scan.failing.size() == scan.cert.failures) {
      // try to certify each failing cell at finer local resolution
      scan.cert.refined = true;
      std::uint64_t unresolved = 0;
      std::uint64_t node_budget = 1ull << 22;
      double z[detail::BucketGrid::kMaxDim];
      for (std::uint64_t idx : scan.failing) {
        decode_grid_point(idx, spec.dim, per_axis, actual_pitch, z);
        if (certify_cube(spec, grid, z, actual_pitch / 2.0, radius, refine_depth,
                         node_budget, &scan.leaf_failures)) {
          ++scan.cert.refined_cells;
        } else {
          ++unresolved;
        }
      }
      scan.cert.failures = unresolved;
      scan.cert.pass = unresolved == 0;
    }
  }
  return scan;
}

// Deterministic local maximization of distance-to-set, used to turn an
// uncovered grid point into an insertable point (the center of its hole).
std::vector<double> ascend_hole(const TorusSpec& spec, const detail::BucketGrid& grid,
                                const double* start, double separation) {
  const int dim = spec.dim;
  std::vector<double> y(start, start + dim);
  double d = grid.nearest_distance(y.data());
  if (!std::isfinite(d) || d >= separation) return y;

  std::vector<std::uint32_t> ties;
  std::vector<double> away(dim), cand(dim), delta(dim);
  double step = separation / 4.0;
  for (int iter = 0; iter < 240 && step > 1e-14; ++iter) {
    grid.collect_within(y.data(), d + 1e-9, detail::kNoExclude, ties);
    std::fill(away.begin(), away.end(), 0.0);
    for (std::uint32_t id : ties) {
      min_image_delta(grid.point(id), y.data(), dim, spec.period, delta.data());
      double norm = 0.0;
      for (int a = 0; a < dim; ++a) norm += delta[a] * delta[a];
      norm = std::sqrt(norm);
      if (norm < 1e-300) continue;
      for (int a = 0; a < dim; ++a) away[a] += delta[a] / norm;
    }
    double norm = 0.0;
    for (int a = 0; a < dim; ++a) norm += away[a] * away[a];
    norm = std::sqrt(norm);
    if (norm < 1e-12) break;  // balanced ridge: local maximum reached
    for (int a = 0; a < dim; ++a)
      cand[a] = wrap_coord(y[a] + step * away[a] / norm, spec.period);
    const double d_cand = grid.nearest_distance(cand.data());
    if (d_cand > d) {
      y = cand;
      d = d_cand;
      if (d >= separation) break;
      step = std::min(step * 1.25, separation / 2.0);
    } else {
      step *= 0.5;
    }
  }
  return y;
}

}  // namespace

SeparatedSet::SeparatedSet(TorusSpec spec, double separation,
                           std::vector<double> flat_coords)
    : spec_(spec), separation_(separation), coords_(std::move(flat_coords)) {
  if (spec_.dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(separation_ > 0.0)) throw std::invalid_argument("separation must be positive");
  if (coords_.size() % static_cast<std::size_t>(spec_.dim) != 0) {
    throw std::invalid_argument("coordinate array length is not a multiple of dim");
  }
  count_ = coords_.size() / static_cast<std::size_t>(spec_.dim);
  for (double c : coords_) {
    if (!(c >= 0.0) || !(c < spec_.period)) {
      throw std::invalid_argument("coordinates must lie in [0, period)");
    }
  }
}

SeparatedSet SeparatedSet::from_points(TorusSpec spec, double separation,
                                       const std::vector<std::vector<double>>& points,
                                       bool check_separation, double tol) {
  std::vector<double> flat;
  flat.reserve(points.size() * static_cast<std::size_t>(spec.dim));
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != spec.dim) {
      throw std::invalid_argument("from_points: dimension mismatch");
    }
    for (double c : p) flat.push_back(wrap_coord(c, spec.period));
  }
  SeparatedSet set(spec, separation, std::move(flat));
  if (check_separation && !verify_separation(set, tol)) {
    throw std::invalid_argument("from_points: input is not " +
                                std::to_string(separation) + "-separated");
  }
  return set;
}

std::vector<std::vector<double>> SeparatedSet::points() const {
  std::vector<std::vector<double>> out(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    auto p = point(i);
    out[i].assign(p.begin(), p.end());
  }
  return out;
}

bool SeparatedSet::certified_maximal() const {
  return certificate_ && certificate_->pass && certificate_->radius <= separation_;
}

SeparatedSet build_maximal_separated(const TorusSpec& spec, double separation,
                                     std::uint64_t seed, const BuildOptions& opts) {
  validate(spec, kStructuralMinPeriod);
  if (!(separation > 0.0) || !(separation <= spec.period / 2.0)) {
    throw std::invalid_argument("separation must lie in (0, period/2]");
  }

  std::vector<double> coords;
  detail::BucketGrid grid(spec, separation);
  grid.bind(&coords);
  const int dim = spec.dim;

  const auto try_insert = [&](const double* q, double admit) -> bool {
    if (grid.size() > 0 && grid.any_below(q, admit)) return false;
    const auto id = static_cast<std::uint32_t>(grid.size());
    coords.insert(coords.end(), q, q + dim);
    grid.insert(id);
    return true;
  };

  if (opts.strategy == BuildStrategy::RandomDarts) {
    std::uint64_t dart = 0;
    std::uint64_t consecutive_failures = 0;
    double q[detail::BucketGrid::kMaxDim];
    for (;;) {
      const auto budget = static_cast<std::uint64_t>(
          opts.failure_multiplier * static_cast<double>(std::max<std::size_t>(grid.size(), 1)));
      if (consecutive_failures >= budget) break;
      for (int a = 0; a < dim; ++a) {
        q[a] = rng::u01(seed, rng::streams::kDarts, dart, static_cast<std::uint64_t>(a)) *
               spec.period;
        if (q[a] >= spec.period) q[a] = 0.0;
      }
      ++dart;
      if (try_insert(q, separation)) consecutive_failures = 0;
      else ++consecutive_failures;
    }
  } else {
    // jittered lattice visited lexicographically
    const double pitch = separation / 2.0;
    const auto per_axis = static_cast<std::uint64_t>(
        std::max<double>(1.0, std::ceil(spec.period / pitch)));
    const double actual = spec.period / static_cast<double>(per_axis);
    double jitter[detail::BucketGrid::kMaxDim];
    for (int a = 0; a < dim; ++a) {
      jitter[a] = rng::u01(seed, rng::streams::kGridJitter, 0, static_cast<std::uint64_t>(a)) *
                  actual;
    }
    std::uint64_t total = 1;
    for (int a = 0; a < dim; ++a) total *= per_axis;
    double q[detail::BucketGrid::kMaxDim];
    for (std::uint64_t i = 0; i < total; ++i) {
      decode_grid_point(i, dim, per_axis, actual, q);
      for (int a = 0; a < dim; ++a) q[a] = wrap_coord(q[a] + jitter[a], spec.period);
      try_insert(q, separation);
    }
  }

  if (!opts.certify) {
    return SeparatedSet(spec, separation, std::move(coords));
  }

  // Certification loop: fill insertable holes found by the grid sweep; once
  // nothing is insertable the remaining failures are pure grid slack, which
  // local subdivision certifies.
  const double pitch = opts.grid_pitch > 0.0
                           ? opts.grid_pitch
                           : separation / (4.0 * std::sqrt(static_cast<double>(dim)));
  CoveringCertificate final_cert;
  for (int pass = 0;; ++pass) {
    if (pass > 10000) throw std::runtime_error("covering certification did not converge");
    GridScan scan = covering_sweep(spec, grid, separation, pitch, opts.workers, true);
    if (scan.cert.pass) {
      final_cert = scan.cert;
      break;
    }
    const std::uint64_t per_axis = static_cast<std::uint64_t>(
        std::max<double>(1.0, std::ceil(spec.period / pitch)));
    const double actual_pitch = spec.period / static_cast<double>(per_axis);
    const double threshold = separation - scan.cert.slack;
    std::size_t inserted = 0;
    double z[detail::BucketGrid::kMaxDim];
    for (std::uint64_t idx : scan.failing) {
      decode_grid_point(idx, dim, per_axis, actual_pitch, z);
      if (grid.size() > 0 && grid.any_within(z, threshold)) continue;  // already fixed
      const std::vector<double> hole = ascend_hole(spec, grid, z, separation);
      if (try_insert(hole.data(), separation - kKnifeEdge)) ++inserted;
    }
    if (inserted == 0) {
      GridScan refined = covering_sweep(spec, grid, separation, pitch, opts.workers,
                                        false, true, opts.refine_depth);
      if (refined.cert.pass) {
        final_cert = refined.cert;
        break;
      }
      // the uncertifiable leaves localize holes whose depth is within a leaf
      // diagonal of the separation; they are insertable up to the distance
      // tolerance the rest of the artifact already grants
      std::size_t rescued = 0;
      for (std::size_t off = 0; off + dim <= refined.leaf_failures.size(); off += dim) {
        if (try_insert(refined.leaf_failures.data() + off, separation - kDistanceTol)) {
          ++rescued;
        }
      }
      if (rescued == 0) {
        throw std::runtime_error(
            "covering certification failed: " + std::to_string(refined.cert.failures) +
            " cells uncertifiable at pitch " + std::to_string(pitch) +
            " (worst grid distance " + std::to_string(refined.cert.worst_distance) + ")");
      }
    }
  }

  SeparatedSet set(spec, separation, std::move(coords));
  set.set_certificate(std::move(final_cert));
  return set;
}

CoveringCertificate verify_covering(const SeparatedSet& set, double radius,
                                    double grid_pitch, int workers, bool refine,
                                    int refine_depth) {
  detail::BucketGrid grid(set.spec(), std::max(set.separation(), set.spec().period / 64.0));
  grid.bind(&set.flat_coords());
  for (std::uint32_t i = 0; i < set.size(); ++i) grid.insert(i);
  return covering_sweep(set.spec(), grid, radius, grid_pitch, workers, false, refine,
                        refine_depth)
      .cert;
}

double min_pairwise_distance(const SeparatedSet& set) {
  if (set.size() < 2) return std::numeric_limits<double>::infinity();
  detail::BucketGrid grid(set.spec(), std::max(set.separation(), set.spec().period / 64.0));
  grid.bind(&set.flat_coords());
  for (std::uint32_t i = 0; i < set.size(); ++i) grid.insert(i);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < set.size(); ++i) {
    best = std::min(best, grid.nearest_distance(set.point(i).data(), i));
  }
  return best;
}

double packing_bound(double separation, double query_radius, int dim) {
  if (!(separation > 0.0)) throw std::invalid_argument("separation must be positive");
  if (query_radius < 0.0) throw std::invalid_argument("query radius must be >= 0");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::pow(2.0 * query_radius / separation + 1.0, dim);
}

std::size_t count_within(const SeparatedSet& set, std::span<const double> p, double s) {
  if (static_cast<int>(p.size()) != set.dim()) {
    throw std::invalid_argument("count_within: dimension mismatch");
  }
  const double s_sq = s * s;
  std::size_t n = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (torus_distance_sq(p.data(), set.point(i).data(), set.dim(),
                          set.spec().period) <= s_sq) {
      ++n;
    }
  }
  return n;
}

std::vector<std::size_t> greedy_separated_subset(
    const std::vector<std::vector<double>>& points, double min_output_separation,
    double tol) {
  if (points.empty()) return {};
  const std::size_t dim = points.front().size();
  if (dim == 0) throw std::invalid_argument("points must have dimension >= 1");
  const auto dist_sq = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = a[k] - b[k];
      s += d * d;
    }
    return s;
  };
  const double one_sq = (1.0 - tol) * (1.0 - tol);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw std::invalid_argument("ragged point list");
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (dist_sq(points[i], points[j]) < one_sq) {
        throw std::invalid_argument("input set is not 1-separated (pair " +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  if (!(min_output_separation >= 1.0)) {
    throw std::invalid_argument("output separation must be >= 1");
  }
  std::vector<std::size_t> kept;
  const double s_sq = min_output_separation * min_output_separation;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool ok = true;
    for (std::size_t j : kept) {
      if (dist_sq(points[i], points[j]) < s_sq) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(i);
  }
  return kept;
}

SetSizeBound max_count_bound(const TorusSpec& spec) {
  const auto b = bounds::point_count_bound(spec.dim, spec.period);
  return SetSizeBound{b.volume_ratio, b.simplified};
}

}  // namespace redblue
