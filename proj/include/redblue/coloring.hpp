#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "redblue/voronoi.hpp"

// The periodic two-coloring: a Bernoulli sample Q of the site set is thinned
// to the subset S of members with no other sampled member within the
// survival radius, and the Voronoi cells of S (boundaries included) are red.

namespace redblue {

// A sampled member survives into S only if no other sampled member lies
// within this distance. The extra tolerance keeps the surviving pairwise
// distances strictly above 5/3 with margin, which the red-pair certificate
// relies on.
inline constexpr double kSurvivalRadius = 5.0 / 3.0;

enum class Color { Red, Blue };

struct ColoringConfig {
  double separation = 1.0 / 3.0;    // t used when building the site set
  double sample_probability = 0.0;  // x
  std::uint64_t seed = 0;
  double tie_tol = kDistanceTol;
};

// 20^-dim, the default sampling probability.
double default_sample_probability(int dim);

class Coloring {
 public:
  static Coloring sample(std::shared_ptr<const SeparatedSet> set, ColoringConfig config);

  // Assemble from explicit membership bits (tests, file loading). s_bits are
  // recomputed from q_bits when absent; when present they are only checked
  // for s ⊆ q so deliberately broken colorings can be probed.
  static Coloring from_parts(std::shared_ptr<const SeparatedSet> set,
                             ColoringConfig config, std::vector<std::uint8_t> q_bits,
                             std::optional<std::vector<std::uint8_t>> s_bits = {});

  // Color of an arbitrary point of E^n under the periodic coloring: red iff
  // some nearest site (within tie_tol) is in S.
  Color color(std::span<const double> point) const;

  const SeparatedSet& set() const { return index_.set(); }
  const PeriodicIndex& index() const { return index_; }
  const ColoringConfig& config() const { return config_; }
  double elimination_radius() const { return elimination_radius_; }

  const std::vector<std::uint8_t>& q_bits() const { return q_bits_; }
  const std::vector<std::uint8_t>& s_bits() const { return s_bits_; }
  bool in_q(std::uint32_t member) const { return q_bits_[member] != 0; }
  bool in_s(std::uint32_t member) const { return s_bits_[member] != 0; }
  std::vector<std::uint32_t> q_ids() const;
  const std::vector<std::uint32_t>& s_ids() const { return s_ids_; }
  std::size_t q_count() const { return q_count_; }
  std::size_t s_count() const { return s_ids_.size(); }

  // Exact min pairwise torus distance over S; +inf for |S| < 2.
  double min_s_distance() const;

  // N(p): members other than p within the elimination radius.
  std::size_t eliminator_count(std::uint32_t member) const;

 private:
  Coloring(std::shared_ptr<const SeparatedSet> set, ColoringConfig config,
           std::vector<std::uint8_t> q, std::vector<std::uint8_t> s);

  PeriodicIndex index_;
  ColoringConfig config_;
  double elimination_radius_ = 0.0;  // kSurvivalRadius + tie_tol
  std::vector<std::uint8_t> q_bits_;
  std::vector<std::uint8_t> s_bits_;
  std::vector<std::uint32_t> s_ids_;
  std::size_t q_count_ = 0;
};

// Independent Bernoulli(x) bits keyed on (seed, member id) so membership is
// reproducible regardless of iteration order.
std::vector<std::uint8_t> sample_q_bits(const SeparatedSet& set,
                                        const ColoringConfig& config);

// Keep q-members with no other q-member within elimination_radius.
std::vector<std::uint8_t> filter_s_bits(const PeriodicIndex& index,
                                        const std::vector<std::uint8_t>& q_bits,
                                        double elimination_radius);

// Exactly x (1-x)^{N(p)}: only members within the elimination radius can
// knock p out of S, and their Q-memberships are independent.
double s_inclusion_probability_exact(const PeriodicIndex& index, double x,
                                     std::uint32_t member, double elimination_radius);

// Monte Carlo estimate of P(member in S) over fresh (Q, S) resamples.
double resample_s_frequency(const PeriodicIndex& index, const ColoringConfig& config,
                            std::uint32_t member, std::uint64_t trials);

// Fraction of uniform torus samples colored red.
double red_density(const Coloring& coloring, std::uint64_t samples, std::uint64_t seed,
                   int workers = 0);

}  // namespace redblue
