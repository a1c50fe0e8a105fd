#include "rssinfo/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rssinfo {

double log_gamma(double z) {
  if (!(z > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(z, &sign);
#else
  return std::lgamma(z);
#endif
}

double digamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw std::domain_error("digamma: argument must be positive and finite");
  }
  double shift = 0.0;
  while (z < 8.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  // B_{2k} / (2k) for k = 1..7.
  static constexpr std::array<double, 7> kCoeff = {
      1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0};
  const double inv2 = 1.0 / (z * z);
  double series = 0.0;
  double power = inv2;
  for (double c : kCoeff) {
    series += c * power;
    power *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - series;
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log_binomial: require 0 <= k <= n");
  }
  if (k == 0 || k == n) return 0.0;
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace rssinfo
