#pragma once

// Closed-form counting and probability bounds behind the union-bound
// feasibility argument. Everything exponential is carried in log space so
// reports stay finite for dimensions up to at least 20.

namespace redblue::bounds {

struct PointCountBound {
  double volume_ratio;  // (36 n R^2 / pi)^(n/2), the ball-volume form
  double simplified;    // (4 sqrt(n) R)^n, always the larger of the two
};
PointCountBound point_count_bound(int dim, double period);

// Sign-pattern count for m polynomials of degree <= max_degree in
// n_variables variables: (50 D M / N)^N. Requires M >= N >= 2, D >= 1.
double sign_pattern_bound(double polynomial_count, int variable_count, int max_degree);
double log_sign_pattern_bound(double polynomial_count, int variable_count, int max_degree);

struct EventCountBound {
  // log of (50 kprime (60 sqrt(n) R)^n)^(2 n^2), split into its two summands
  double log_relaxed;       // 2 n^2 ln(50 kprime) + 2 n^3 ln(60 sqrt(n) R)
  double log_intermediate;  // sign-pattern form with the exact polynomial count
};
EventCountBound bad_event_count_bound(int dim, double period, double kprime, int span_dim);

struct FeasibilityReport {
  int dim = 0;
  double period = 0.0;
  double k_size = 0.0;             // |K|
  double sample_probability = 0.0; // x = 20^-n
  double kprime = 0.0;             // ceil(|K| / 11^n)
  int span_dim = 0;                // d, affine span dimension of the separated subset
  double polynomial_count = 0.0;   // M = 5^n kprime 3^n (4 sqrt(n) R)^n
  int variable_count = 0;          // N = (d + 1) n
  int max_degree = 1;              // D
  double log_event_count_bound = 0.0;
  double log_intermediate_bound = 0.0;
  double log_single_event_bound = 0.0;  // -x kprime / 2
  double margin_a = 0.0;  // x kprime / 4 - 2 n^2 ln(50 kprime)
  double margin_b = 0.0;  // x kprime / 4 - 2 n^3 ln(60 sqrt(n) R)
  bool feasible = false;  // both margins positive
};

// x and kprime are derived from (dim, k_size); span_dim < 0 means the
// worst case d = n.
FeasibilityReport theorem_feasibility(int dim, double period, double k_size,
                                      int span_dim = -1);

// Smallest integer |K| that theorem_feasibility reports feasible, by
// exponential then binary search (feasibility is monotone in |K| once it
// first holds). Exact while the answer stays below 2^53.
double min_k_for_feasibility(int dim, double period);

struct EllMReport {
  FeasibilityReport report;      // K = m collinear unit-spaced points, period m
  double m = 0.0;
  double threshold = 0.0;        // 10^(4n) log2(m)
  bool hypothesis_holds = false; // m > threshold
};
EllMReport ell_m_feasibility(int dim, double m);

}  // namespace redblue::bounds
