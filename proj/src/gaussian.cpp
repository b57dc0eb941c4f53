#include "amrsched/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace amrsched {

double std_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double std_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

Gaussian add(const Gaussian& a, const Gaussian& b) {
  return {a.mean + b.mean, a.variance + b.variance};
}

Gaussian max_with_constant(const Gaussian& a, double e) {
  if (a.variance <= 0.0) {
    return {std::max(a.mean, e), 0.0};
  }
  const double sigma = std::sqrt(a.variance);
  // Work with D = A - e so that Y - e = max(D, 0); this is algebraically the
  // same pair of moments but avoids cancelling two large squares when the
  // clock value is far from zero.
  const double shift = a.mean - e;
  const double alpha = shift / sigma;
  // Beyond 9 sigma the clipped mass is below 1e-19 of the total.
  if (alpha > 9.0) return a;
  if (alpha < -9.0) return {e, 0.0};
  const double cdf = std_cdf(alpha);
  const double pdf = std_pdf(alpha);
  const double m1 = shift * cdf + sigma * pdf;
  const double m2 = (shift * shift + a.variance) * cdf + shift * sigma * pdf;
  double variance = m2 - m1 * m1;
  variance = std::clamp(variance, 0.0, a.variance);
  // E[max(D,0)] >= max(E[D],0); enforce it against rounding in the tails.
  return {e + std::max({m1, shift, 0.0}), variance};
}

double exceed_probability(const Gaussian& a, double h) {
  if (a.variance <= 0.0) {
    return a.mean > h ? 1.0 : 0.0;
  }
  const double z = (h - a.mean) / std::sqrt(a.variance);
  if (z > 9.0) return 0.0;
  if (z < -9.0) return 1.0;
  return std::clamp(std_cdf(-z), 0.0, 1.0);
}

}  // namespace amrsched
