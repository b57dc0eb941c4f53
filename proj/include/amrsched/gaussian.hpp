#pragma once

namespace amrsched {

/// Normal distribution described by its first two moments, in seconds and
/// seconds squared. Every arrival, start and travel time in the solver is one
/// of these.
struct Gaussian {
  double mean = 0.0;
  double variance = 0.0;

  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

double std_pdf(double z);
double std_cdf(double z);

/// Sum of two independent normals.
Gaussian add(const Gaussian& a, const Gaussian& b);

/// Moment-matched normal approximation of max(A, e).
///
/// The mean and variance are the exact first two moments of the clipped
/// variable; the result is then treated as normal again by the caller. A
/// point mass (variance 0) is clipped exactly.
Gaussian max_with_constant(const Gaussian& a, double e);

/// P(A > h). Point masses give 0 or 1.
double exceed_probability(const Gaussian& a, double h);

}  // namespace amrsched
