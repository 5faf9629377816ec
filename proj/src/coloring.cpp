#include "redblue/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "redblue/parallel.hpp"
#include "redblue/rng.hpp"

namespace redblue {

double default_sample_probability(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::pow(20.0, -static_cast<double>(dim));
}

std::vector<std::uint8_t> sample_q_bits(const SeparatedSet& set,
                                        const ColoringConfig& config) {
  const double x = config.sample_probability;
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::invalid_argument("sample probability must lie in [0, 1]");
  }
  std::vector<std::uint8_t> bits(set.size(), 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    bits[i] = rng::u01(config.seed, rng::streams::kSampleQ, i) < x ? 1 : 0;
  }
  return bits;
}

std::vector<std::uint8_t> filter_s_bits(const PeriodicIndex& index,
                                        const std::vector<std::uint8_t>& q_bits,
                                        double elimination_radius) {
  if (q_bits.size() != index.set().size()) {
    throw std::invalid_argument("q_bits size does not match the set");
  }
  std::vector<std::uint8_t> s(q_bits.size(), 0);
  for (std::uint32_t i = 0; i < q_bits.size(); ++i) {
    if (!q_bits[i]) continue;
    bool eliminated = false;
    for (std::uint32_t nb : index.neighbors_within(i, elimination_radius)) {
      if (q_bits[nb]) {
        eliminated = true;
        break;
      }
    }
    s[i] = eliminated ? 0 : 1;
  }
  return s;
}

Coloring::Coloring(std::shared_ptr<const SeparatedSet> set, ColoringConfig config,
                   std::vector<std::uint8_t> q, std::vector<std::uint8_t> s)
    : index_(std::move(set)),
      config_(config),
      elimination_radius_(kSurvivalRadius + config.tie_tol),
      q_bits_(std::move(q)),
      s_bits_(std::move(s)) {
  if (q_bits_.size() != index_.set().size() || s_bits_.size() != index_.set().size()) {
    throw std::invalid_argument("membership bit arrays must match the set size");
  }
  for (std::uint32_t i = 0; i < s_bits_.size(); ++i) {
    if (s_bits_[i] && !q_bits_[i]) {
      throw std::invalid_argument("S must be a subset of Q (member " +
                                  std::to_string(i) + ")");
    }
    if (q_bits_[i]) ++q_count_;
    if (s_bits_[i]) s_ids_.push_back(i);
  }
}

Coloring Coloring::sample(std::shared_ptr<const SeparatedSet> set, ColoringConfig config) {
  auto q = sample_q_bits(*set, config);
  PeriodicIndex index(set);
  auto s = filter_s_bits(index, q, kSurvivalRadius + config.tie_tol);
  return Coloring(std::move(set), config, std::move(q), std::move(s));
}

Coloring Coloring::from_parts(std::shared_ptr<const SeparatedSet> set,
                              ColoringConfig config, std::vector<std::uint8_t> q_bits,
                              std::optional<std::vector<std::uint8_t>> s_bits) {
  if (!s_bits) {
    PeriodicIndex index(set);
    s_bits = filter_s_bits(index, q_bits, kSurvivalRadius + config.tie_tol);
  }
  return Coloring(std::move(set), config, std::move(q_bits), std::move(*s_bits));
}

Color Coloring::color(std::span<const double> point) const {
  if (s_ids_.empty()) return Color::Blue;
  const TorusSpec& spec = index_.set().spec();
  if (static_cast<int>(point.size()) != spec.dim) {
    throw std::invalid_argument("color: dimension mismatch");
  }
  double wrapped[detail::BucketGrid::kMaxDim];
  for (int a = 0; a < spec.dim; ++a) wrapped[a] = wrap_coord(point[a], spec.period);
  const NearestResult near =
      index_.nearest({wrapped, static_cast<std::size_t>(spec.dim)}, config_.tie_tol);
  for (std::uint32_t id : near.ids) {
    if (s_bits_[id]) return Color::Red;
  }
  return Color::Blue;
}

std::vector<std::uint32_t> Coloring::q_ids() const {
  std::vector<std::uint32_t> out;
  out.reserve(q_count_);
  for (std::uint32_t i = 0; i < q_bits_.size(); ++i) {
    if (q_bits_[i]) out.push_back(i);
  }
  return out;
}

double Coloring::min_s_distance() const {
  if (s_ids_.size() < 2) return std::numeric_limits<double>::infinity();
  const SeparatedSet& set = index_.set();
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s_ids_.size(); ++i) {
    for (std::size_t j = i + 1; j < s_ids_.size(); ++j) {
      best_sq = std::min(best_sq, torus_distance_sq(set.point(s_ids_[i]).data(),
                                                    set.point(s_ids_[j]).data(),
                                                    set.dim(), set.spec().period));
    }
  }
  return std::sqrt(best_sq);
}

std::size_t Coloring::eliminator_count(std::uint32_t member) const {
  return index_.neighbor_count(member, elimination_radius_);
}

double s_inclusion_probability_exact(const PeriodicIndex& index, double x,
                                     std::uint32_t member, double elimination_radius) {
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::invalid_argument("sample probability must lie in [0, 1]");
  }
  const auto n_eliminators =
      static_cast<double>(index.neighbor_count(member, elimination_radius));
  return x * std::pow(1.0 - x, n_eliminators);
}

double resample_s_frequency(const PeriodicIndex& index, const ColoringConfig& config,
                            std::uint32_t member, std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const double x = config.sample_probability;
  const auto eliminators =
      index.neighbors_within(member, kSurvivalRadius + config.tie_tol);
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    if (!(rng::u01(config.seed, rng::streams::kResample, trial, member) < x)) continue;
    bool eliminated = false;
    for (std::uint32_t nb : eliminators) {
      if (rng::u01(config.seed, rng::streams::kResample, trial, nb) < x) {
        eliminated = true;
        break;
      }
    }
    if (!eliminated) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double red_density(const Coloring& coloring, std::uint64_t samples, std::uint64_t seed,
                   int workers) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const TorusSpec& spec = coloring.set().spec();
  std::vector<std::uint64_t> red_counts(
      static_cast<std::size_t>(std::max(resolve_workers(workers), 1)), 0);
  parallel_chunks(samples, workers, 16384, [&](std::uint64_t b, std::uint64_t e, int w) {
    double q[detail::BucketGrid::kMaxDim];
    std::uint64_t local = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      for (int a = 0; a < spec.dim; ++a) {
        q[a] = rng::u01(seed, rng::streams::kRedDensity, i, static_cast<std::uint64_t>(a)) *
               spec.period;
      }
      if (coloring.color({q, static_cast<std::size_t>(spec.dim)}) == Color::Red) ++local;
    }
    red_counts[static_cast<std::size_t>(w)] += local;
  });
  std::uint64_t red = 0;
  for (std::uint64_t c : red_counts) red += c;
  return static_cast<double>(red) / static_cast<double>(samples);
}

}  // namespace redblue
