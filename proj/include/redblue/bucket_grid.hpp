#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "redblue/torus.hpp"

// Periodic cell list over a flat coordinate array. Bucket edge is
// period / floor(period / target_edge), so edges are >= target_edge, wrap
// exactly at the period, and a 3^n neighborhood suffices for queries up to
// the target edge. The grid holds ids only and views the coordinate storage,
// which may grow while building.

namespace redblue::detail {

inline constexpr std::uint32_t kNoExclude = 0xffffffffu;

class BucketGrid {
 public:
  BucketGrid(TorusSpec spec, double target_edge) : spec_(spec) {
    axis_buckets_ = std::max(1, static_cast<int>(std::floor(spec.period / target_edge)));
    // guard against floor(R / t) producing an edge a hair under t
    while (axis_buckets_ > 1 && spec.period / axis_buckets_ < target_edge) --axis_buckets_;
    edge_ = spec.period / axis_buckets_;
    std::size_t total = 1;
    for (int i = 0; i < spec.dim; ++i) total *= static_cast<std::size_t>(axis_buckets_);
    buckets_.assign(total, {});
  }

  void bind(const std::vector<double>* coords) { coords_ = coords; }

  int axis_buckets() const { return axis_buckets_; }
  double edge() const { return edge_; }
  std::size_t size() const { return count_; }

  void insert(std::uint32_t id) {
    buckets_[bucket_of(point(id))].push_back(id);
    ++count_;
  }

  const double* point(std::uint32_t id) const {
    return coords_->data() + static_cast<std::size_t>(id) * spec_.dim;
  }

  // Exact distance to the nearest member other than `exclude`; +inf when the
  // grid is empty.
  double nearest_distance(const double* q, std::uint32_t exclude = kNoExclude) const {
    return std::sqrt(nearest_distance_sq(q, exclude, -1.0));
  }

  // Exact minimum distance plus every id within min + tie_tol, ascending.
  double nearest_ids(const double* q, double tie_tol,
                     std::vector<std::uint32_t>& ids_out) const {
    ids_out.clear();
    const double best = nearest_distance(q);
    if (!std::isfinite(best)) return best;
    collect_within(q, best + tie_tol, kNoExclude, ids_out);
    return best;
  }

  // True iff some member (other than `exclude`) lies at distance <= s.
  bool any_within(const double* q, double s, std::uint32_t exclude = kNoExclude) const {
    return nearest_distance_sq(q, exclude, s * s) <= s * s;
  }

  // True iff some member lies strictly below s (dart admissibility test).
  bool any_below(const double* q, double s, std::uint32_t exclude = kNoExclude) const {
    return nearest_distance_sq(q, exclude, s * s) < s * s;
  }

  // Ids with torus distance <= s, ascending.
  void collect_within(const double* q, double s, std::uint32_t exclude,
                      std::vector<std::uint32_t>& out) const {
    out.clear();
    const double s_sq = s * s;
    for_buckets_within(q, s, [&](const std::vector<std::uint32_t>& bucket) {
      for (std::uint32_t id : bucket) {
        if (id == exclude) continue;
        if (torus_distance_sq(q, point(id), spec_.dim, spec_.period) <= s_sq)
          out.push_back(id);
      }
    });
    std::sort(out.begin(), out.end());
  }

  std::size_t count_within(const double* q, double s, std::uint32_t exclude) const {
    std::size_t n = 0;
    const double s_sq = s * s;
    for_buckets_within(q, s, [&](const std::vector<std::uint32_t>& bucket) {
      for (std::uint32_t id : bucket) {
        if (id == exclude) continue;
        if (torus_distance_sq(q, point(id), spec_.dim, spec_.period) <= s_sq) ++n;
      }
    });
    return n;
  }

  static constexpr int kMaxDim = 16;

 private:
  // Shared kernel: exact nearest squared distance, except that when
  // stop_at_sq >= 0 the scan returns as soon as any member at or below that
  // threshold is seen (enough for threshold predicates).
  double nearest_distance_sq(const double* q, std::uint32_t exclude,
                             double stop_at_sq) const {
    double best_sq = std::numeric_limits<double>::infinity();
    int qb[kMaxDim];
    bucket_coords(q, qb);
    for (int shell = 0;; ++shell) {
      if (2 * shell + 1 > axis_buckets_) {
        return scan_all(q, exclude, stop_at_sq, best_sq);
      }
      const bool stopped = scan_shell(q, qb, shell, exclude, [&](double d_sq) {
        if (d_sq < best_sq) best_sq = d_sq;
        return stop_at_sq >= 0.0 && d_sq <= stop_at_sq;
      });
      if (stopped) return best_sq;
      const double reach = static_cast<double>(shell) * edge_;
      if (best_sq <= reach * reach) return best_sq;
    }
  }

  void bucket_coords(const double* q, int* out) const {
    for (int i = 0; i < spec_.dim; ++i) {
      int b = static_cast<int>(q[i] / edge_);
      if (b >= axis_buckets_) b = axis_buckets_ - 1;
      if (b < 0) b = 0;
      out[i] = b;
    }
  }

  std::size_t bucket_of(const double* q) const {
    int b[kMaxDim];
    bucket_coords(q, b);
    std::size_t idx = 0;
    for (int i = 0; i < spec_.dim; ++i)
      idx = idx * static_cast<std::size_t>(axis_buckets_) + static_cast<std::size_t>(b[i]);
    return idx;
  }

  double scan_all(const double* q, std::uint32_t exclude, double stop_at_sq,
                  double best_sq) const {
    for (const auto& bucket : buckets_) {
      for (std::uint32_t id : bucket) {
        if (id == exclude) continue;
        const double d_sq = torus_distance_sq(q, point(id), spec_.dim, spec_.period);
        if (d_sq < best_sq) {
          best_sq = d_sq;
          if (stop_at_sq >= 0.0 && d_sq <= stop_at_sq) return best_sq;
        }
      }
    }
    return best_sq;
  }

  // Visit members of every bucket whose Chebyshev offset from q's bucket is
  // exactly `shell` (offsets wrap; caller guarantees 2*shell+1 <= axis count).
  // The visitor returns true to stop; returns whether the scan was stopped.
  template <class Fn>
  bool scan_shell(const double* q, const int* qb, int shell, std::uint32_t exclude,
                  Fn&& on_distance_sq) const {
    int off[kMaxDim];
    for (int i = 0; i < spec_.dim; ++i) off[i] = -shell;
    for (;;) {
      bool on_surface = shell == 0;
      for (int i = 0; i < spec_.dim && !on_surface; ++i)
        if (off[i] == -shell || off[i] == shell) on_surface = true;
      if (on_surface) {
        std::size_t idx = 0;
        for (int i = 0; i < spec_.dim; ++i) {
          int b = qb[i] + off[i];
          if (b < 0) b += axis_buckets_;
          else if (b >= axis_buckets_) b -= axis_buckets_;
          idx = idx * static_cast<std::size_t>(axis_buckets_) + static_cast<std::size_t>(b);
        }
        for (std::uint32_t id : buckets_[idx]) {
          if (id == exclude) continue;
          if (on_distance_sq(torus_distance_sq(q, point(id), spec_.dim, spec_.period))) {
            return true;
          }
        }
      }
      int axis = spec_.dim - 1;
      for (; axis >= 0; --axis) {
        if (++off[axis] <= shell) break;
        off[axis] = -shell;
      }
      if (axis < 0) return false;
    }
  }

  template <class Fn>
  void for_buckets_within(const double* q, double s, Fn&& fn) const {
    const int reach = static_cast<int>(std::floor(s / edge_)) + 1;
    if (2 * reach + 1 >= axis_buckets_) {
      for (const auto& bucket : buckets_) fn(bucket);
      return;
    }
    int qb[kMaxDim];
    bucket_coords(q, qb);
    int off[kMaxDim];
    for (int i = 0; i < spec_.dim; ++i) off[i] = -reach;
    for (;;) {
      std::size_t idx = 0;
      for (int i = 0; i < spec_.dim; ++i) {
        int b = qb[i] + off[i];
        if (b < 0) b += axis_buckets_;
        else if (b >= axis_buckets_) b -= axis_buckets_;
        idx = idx * static_cast<std::size_t>(axis_buckets_) + static_cast<std::size_t>(b);
      }
      fn(buckets_[idx]);
      int axis = spec_.dim - 1;
      for (; axis >= 0; --axis) {
        if (++off[axis] <= reach) break;
        off[axis] = -reach;
      }
      if (axis < 0) return;
    }
  }

  TorusSpec spec_;
  const std::vector<double>* coords_ = nullptr;
  int axis_buckets_ = 1;
  double edge_ = 0.0;
  std::size_t count_ = 0;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

}  // namespace redblue::detail
