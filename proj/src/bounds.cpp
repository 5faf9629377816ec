#include "redblue/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace redblue::bounds {

namespace {
constexpr double kPi = 3.14159265358979323846;

double require_positive_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return static_cast<double>(dim);
}
}  // namespace

PointCountBound point_count_bound(int dim, double period) {
  const double n = require_positive_dim(dim);
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  PointCountBound b;
  b.volume_ratio = std::pow(36.0 * n * period * period / kPi, n / 2.0);
  b.simplified = std::pow(4.0 * std::sqrt(n) * period, n);
  return b;
}

double log_sign_pattern_bound(double polynomial_count, int variable_count,
                              int max_degree) {
  if (variable_count < 2 || polynomial_count < static_cast<double>(variable_count)) {
    throw std::invalid_argument(
        "sign_pattern_bound requires polynomial_count >= variable_count >= 2");
  }
  if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
  const double n_vars = static_cast<double>(variable_count);
  return n_vars * std::log(50.0 * max_degree * polynomial_count / n_vars);
}

double sign_pattern_bound(double polynomial_count, int variable_count, int max_degree) {
  return std::exp(log_sign_pattern_bound(polynomial_count, variable_count, max_degree));
}

EventCountBound bad_event_count_bound(int dim, double period, double kprime,
                                      int span_dim) {
  const double n = require_positive_dim(dim);
  if (span_dim < 0 || span_dim > dim) {
    throw std::invalid_argument("span_dim must lie in [0, dim]");
  }
  if (!(kprime >= 1.0)) throw std::invalid_argument("kprime must be >= 1");
  EventCountBound out;
  out.log_relaxed = 2.0 * n * n * std::log(50.0 * kprime) +
                    2.0 * n * n * n * std::log(60.0 * std::sqrt(n) * period);
  // exact polynomial count: one linear inequality set per (point of K', cell)
  // pair; log M = ln kprime + n ln(60 sqrt(n) R) since 5 * 3 * 4 = 60
  const double log_m = std::log(kprime) + n * std::log(60.0 * std::sqrt(n) * period);
  const int n_vars = (span_dim + 1) * dim;
  const double log_50m_over_n =
      std::log(50.0) + log_m - std::log(static_cast<double>(n_vars));
  out.log_intermediate = static_cast<double>(n_vars) * log_50m_over_n;
  return out;
}

FeasibilityReport theorem_feasibility(int dim, double period, double k_size,
                                      int span_dim) {
  const double n = require_positive_dim(dim);
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  if (!(k_size >= 1.0)) throw std::invalid_argument("k_size must be >= 1");
  FeasibilityReport r;
  r.dim = dim;
  r.period = period;
  r.k_size = k_size;
  r.span_dim = span_dim < 0 ? dim : span_dim;
  r.sample_probability = std::pow(20.0, -n);
  r.kprime = std::ceil(k_size / std::pow(11.0, n));
  r.variable_count = (r.span_dim + 1) * dim;
  r.max_degree = 1;
  r.polynomial_count =
      std::pow(15.0, n) * r.kprime * std::pow(4.0 * std::sqrt(n) * period, n);
  const EventCountBound events = bad_event_count_bound(dim, period, r.kprime, r.span_dim);
  r.log_event_count_bound = events.log_relaxed;
  r.log_intermediate_bound = events.log_intermediate;
  r.log_single_event_bound = -r.sample_probability * r.kprime / 2.0;
  const double quarter = r.sample_probability * r.kprime / 4.0;
  r.margin_a = quarter - 2.0 * n * n * std::log(50.0 * r.kprime);
  r.margin_b = quarter - 2.0 * n * n * n * std::log(60.0 * std::sqrt(n) * period);
  r.feasible = r.margin_a > 0.0 && r.margin_b > 0.0;
  return r;
}

double min_k_for_feasibility(int dim, double period) {
  require_positive_dim(dim);
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  const auto feasible = [&](double k) {
    return theorem_feasibility(dim, period, k).feasible;
  };
  double hi = 1.0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("min_k_for_feasibility diverged");
  }
  double lo = hi / 2.0;  // infeasible (or 0.5 when K=1 is already feasible)
  while (std::floor(lo) + 1.0 < hi) {
    const double mid = std::floor((lo + hi) / 2.0);
    if (mid <= lo || mid >= hi) break;  // doubles can no longer split the range
    if (feasible(mid)) hi = mid;
    else lo = mid;
  }
  // walk to the exact integer crossover while doubles can still resolve it
  if (hi < 9.007199254740992e15) {
    while (hi > 1.0 && feasible(hi - 1.0)) hi -= 1.0;
  }
  return hi;
}

EllMReport ell_m_feasibility(int dim, double m) {
  const double n = require_positive_dim(dim);
  if (!(m >= 2.0)) throw std::invalid_argument("m must be >= 2");
  EllMReport out;
  out.m = m;
  // m unit-spaced collinear points: 1-separated, diameter m - 1, so they fit
  // a period-m torus coloring
  out.report = theorem_feasibility(dim, m, m);
  out.threshold = std::pow(10.0, 4.0 * n) * std::log2(m);
  out.hypothesis_holds = m > out.threshold;
  return out;
}

}  // namespace redblue::bounds
