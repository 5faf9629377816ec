#include "redblue/torus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace redblue {

void validate(const TorusSpec& spec, double min_period) {
  if (spec.dim < 1) {
    throw std::invalid_argument("torus dimension must be >= 1, got " +
                                std::to_string(spec.dim));
  }
  if (!(spec.period > min_period)) {
    throw std::invalid_argument("torus period must exceed " +
                                std::to_string(min_period) + ", got " +
                                std::to_string(spec.period));
  }
}

double wrap_coord(double value, double period) {
  double r = value - period * std::floor(value / period);
  // floor rounding can land exactly on the upper edge
  if (r >= period) r -= period;
  if (r < 0.0) r = 0.0;
  return r;
}

TorusPoint wrap(std::span<const double> raw, const TorusSpec& spec) {
  if (static_cast<int>(raw.size()) != spec.dim) {
    throw std::invalid_argument("wrap: expected " + std::to_string(spec.dim) +
                                " coordinates, got " + std::to_string(raw.size()));
  }
  TorusPoint p;
  p.coords.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    p.coords[i] = wrap_coord(raw[i], spec.period);
  }
  return p;
}

double torus_distance_sq(const double* a, const double* b, int dim, double period) {
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = axis_distance(a[i], b[i], period);
    sum += d * d;
  }
  return sum;
}

double torus_distance(std::span<const double> a, std::span<const double> b,
                      const TorusSpec& spec) {
  if (static_cast<int>(a.size()) != spec.dim || static_cast<int>(b.size()) != spec.dim) {
    throw std::invalid_argument("torus_distance: dimension mismatch");
  }
  return std::sqrt(torus_distance_sq(a.data(), b.data(), spec.dim, spec.period));
}

double torus_distance(const TorusPoint& a, const TorusPoint& b, const TorusSpec& spec) {
  return torus_distance(std::span<const double>(a.coords),
                        std::span<const double>(b.coords), spec);
}

void nearest_delta(const double* from, const double* to, int dim, double period,
                   double* delta_out) {
  const double half = period / 2.0;
  for (int i = 0; i < dim; ++i) {
    double d = to[i] - from[i];  // in (-period, period)
    if (d > half) d -= period;
    else if (d < -half) d += period;
    if (d == half || d == -half) {
      throw std::domain_error("nearest_lift: axis displacement is exactly half a period");
    }
    delta_out[i] = d;
  }
}

void min_image_delta(const double* from, const double* to, int dim, double period,
                     double* delta_out) noexcept {
  const double half = period / 2.0;
  for (int i = 0; i < dim; ++i) {
    double d = to[i] - from[i];
    if (d > half) d -= period;
    else if (d < -half) d += period;
    delta_out[i] = d;
  }
}

std::vector<double> nearest_lift(const TorusPoint& center, const TorusPoint& other,
                                 const TorusSpec& spec) {
  if (static_cast<int>(center.coords.size()) != spec.dim ||
      static_cast<int>(other.coords.size()) != spec.dim) {
    throw std::invalid_argument("nearest_lift: dimension mismatch");
  }
  std::vector<double> lifted(spec.dim);
  nearest_delta(center.coords.data(), other.coords.data(), spec.dim, spec.period,
                lifted.data());
  for (int i = 0; i < spec.dim; ++i) lifted[i] += center.coords[i];
  return lifted;
}

}  // namespace redblue
