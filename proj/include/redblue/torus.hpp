#pragma once

#include <span>
#include <vector>

// Flat torus (E/RZ)^n: coordinate wrapping, the minimum-image metric, and
// lifting torus points into local Euclidean charts.

namespace redblue {

// Absolute distance tolerance used throughout for tie detection; strict
// inequalities backing certificates are required to hold with margin > this.
inline constexpr double kDistanceTol = 1e-9;

struct TorusSpec {
  int dim = 1;         // number of axes, >= 1
  double period = 0.0; // R, edge length of the fundamental domain [0, R)^n
};

// Throws std::invalid_argument unless dim >= 1 and period > min_period.
// The default keeps the stricter R > 2 hypothesis; the unit-distance
// argument itself only needs R > 5/3.
void validate(const TorusSpec& spec, double min_period = 2.0);

inline constexpr double kStructuralMinPeriod = 5.0 / 3.0;

struct TorusPoint {
  std::vector<double> coords;  // each in [0, period)
};

// Reduce a single coordinate into [0, period).
double wrap_coord(double value, double period);

// Reduce a raw Euclidean point into the fundamental domain. Idempotent.
TorusPoint wrap(std::span<const double> raw, const TorusSpec& spec);

// Minimum-image distance along one axis, in [0, period/2].
inline double axis_distance(double a, double b, double period) {
  double d = a > b ? a - b : b - a;
  const double wrapped = period - d;
  return d < wrapped ? d : wrapped;
}

// Squared minimum-image distance between two wrapped points.
double torus_distance_sq(const double* a, const double* b, int dim, double period);

double torus_distance(const TorusPoint& a, const TorusPoint& b, const TorusSpec& spec);
double torus_distance(std::span<const double> a, std::span<const double> b,
                      const TorusSpec& spec);

// Signed per-axis displacement from `from` to the nearest image of `to`,
// in (-period/2, period/2). Throws std::domain_error if some axis
// displacement is exactly half a period (two images tie).
void nearest_delta(const double* from, const double* to, int dim, double period,
                   double* delta_out);

// Same, but half-period ties resolve deterministically to +period/2.
void min_image_delta(const double* from, const double* to, int dim, double period,
                     double* delta_out) noexcept;

// Representative of `other` in E^n closest to `center`; its Euclidean
// distance to `center` equals the torus distance.
std::vector<double> nearest_lift(const TorusPoint& center, const TorusPoint& other,
                                 const TorusSpec& spec);

}  // namespace redblue
