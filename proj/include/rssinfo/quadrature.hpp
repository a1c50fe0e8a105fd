#pragma once

#include <functional>

#include "rssinfo/distributions.hpp"

namespace rssinfo {

enum class EndpointPolicy {
  // Integrate over the open interval; nodes never touch the endpoints.
  kOpen,
  // Integrate over [a + eps (b - a), b - eps (b - a)] and charge an estimate
  // of the two dropped slivers to the error estimate.
  kInset,
};

enum class HalfLineMap {
  kRational,     // x = a + s t / (1 - t)
  kLogarithmic,  // x = a - s log(1 - t)
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  double endpoint_inset = 1e-12;
  EndpointPolicy endpoint_policy = EndpointPolicy::kInset;
  HalfLineMap half_line_map = HalfLineMap::kRational;

  // Throws std::invalid_argument on non-positive tolerances or limits.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = true;

  // Sum of independent integrals: values and errors add, convergence is
  // the conjunction.
  QuadratureResult& operator+=(const QuadratureResult& other);
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) over finite [a, b]. Throws
// NonFiniteIntegrand if f is NaN or infinite at an evaluation point.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& cfg = {});

// Integral over (a, inf) after mapping onto (0, 1); `scale` sets where the
// map places the bulk of the mass.
QuadratureResult integrate_half_line(const Integrand& f, double a,
                                     const QuadratureConfig& cfg = {},
                                     double scale = 1.0);

// Integral over the real line, split at `center`.
QuadratureResult integrate_real_line(const Integrand& f, double center,
                                     const QuadratureConfig& cfg = {},
                                     double scale = 1.0);

// Integral over the support of `dist`, using its centre and scale.
QuadratureResult integrate_over(const Integrand& f, const Distribution& dist,
                                const QuadratureConfig& cfg = {});
QuadratureResult integrate_over(const Integrand& f, const Support& support,
                                const QuadratureConfig& cfg = {},
                                double center = 0.0, double scale = 1.0);

// -integral of g log g over the support, with 0 log 0 := 0.
QuadratureResult entropy_integral(const Integrand& density, const Support& support,
                                  const QuadratureConfig& cfg = {},
                                  double center = 0.0, double scale = 1.0);

// Same, from a log-density (avoids log of underflowed values).
QuadratureResult entropy_integral_log(const Integrand& log_density,
                                      const Support& support,
                                      const QuadratureConfig& cfg = {},
                                      double center = 0.0, double scale = 1.0);

}  // namespace rssinfo
