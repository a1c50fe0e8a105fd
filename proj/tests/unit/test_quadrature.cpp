#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rssinfo/errors.hpp"
#include "rssinfo/quadrature.hpp"

namespace rssinfo {
namespace {

constexpr double kPi = std::numbers::pi;

enum class Domain { kFinite, kHalf, kReal };

struct Case {
  std::string name;
  Integrand f;
  Domain domain;
  double a;
  double b;
  double truth;
};

std::vector<Case> battery() {
  return {
      {"u", [](double u) { return u; }, Domain::kFinite, 0, 1, 0.5},
      {"u log u", [](double u) { return u * std::log(u); }, Domain::kFinite, 0, 1, -0.25},
      {"log u", [](double u) { return std::log(u); }, Domain::kFinite, 0, 1, -1.0},
      {"u^2 log u", [](double u) { return u * u * std::log(u); }, Domain::kFinite, 0, 1,
       -1.0 / 9.0},
      {"u^2 log(1-u)", [](double u) { return u * u * std::log1p(-u); }, Domain::kFinite, 0, 1,
       -11.0 / 18.0},
      {"beta kernel u^3 (1-u)^2", [](double u) { return u * u * u * (1 - u) * (1 - u); },
       Domain::kFinite, 0, 1, 1.0 / 60.0},
      {"u^-1/2", [](double u) { return 1.0 / std::sqrt(u); }, Domain::kFinite, 0, 1, 2.0},
      {"sin", [](double x) { return std::sin(x); }, Domain::kFinite, 0, kPi, 2.0},
      {"e^-x", [](double x) { return std::exp(-x); }, Domain::kHalf, 0, 0, 1.0},
      {"2 e^-2x", [](double x) { return 2 * std::exp(-2 * x); }, Domain::kHalf, 0, 0, 1.0},
      {"x e^-x", [](double x) { return x * std::exp(-x); }, Domain::kHalf, 0, 0, 1.0},
      {"log x e^-x", [](double x) { return std::log(x) * std::exp(-x); }, Domain::kHalf, 0, 0,
       -std::numbers::egamma},
      {"gaussian", [](double x) { return std::exp(-0.5 * x * x); }, Domain::kReal, 0, 0,
       std::sqrt(2 * kPi)},
  };
}

QuadratureResult run(const Case& c, const QuadratureConfig& cfg) {
  switch (c.domain) {
    case Domain::kFinite: return integrate(c.f, c.a, c.b, cfg);
    case Domain::kHalf: return integrate_half_line(c.f, c.a, cfg);
    case Domain::kReal: return integrate_real_line(c.f, c.a, cfg);
  }
  return {};
}

TEST(Quadrature, Examples) {
  EXPECT_NEAR(integrate([](double u) { return u; }, 0, 1).value, 0.5, 1e-14);
  EXPECT_NEAR(integrate([](double u) { return u * std::log(u); }, 0, 1).value, -0.25, 1e-10);
  EXPECT_NEAR(integrate([](double u) { return std::log(u); }, 0, 1).value, -1.0, 1e-9);
  EXPECT_NEAR(integrate_half_line([](double x) { return std::exp(-x); }, 0).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate_half_line([](double x) { return 2 * std::exp(-2 * x); }, 0).value, 1.0,
              1e-10);
  EXPECT_NEAR(integrate_half_line([](double x) { return x * std::exp(-x); }, 0).value, 1.0,
              1e-10);
}

TEST(Quadrature, BatteryAccuracy) {
  for (const QuadratureConfig& cfg :
       {QuadratureConfig{}, QuadratureConfig{1e-12, 1e-10}, QuadratureConfig{1e-8, 1e-6}}) {
    for (const auto& c : battery()) {
      const auto r = run(c, cfg);
      const double bound = 10.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(c.truth));
      EXPECT_LE(std::abs(r.value - c.truth), bound)
          << c.name << " abs_tol=" << cfg.abs_tol << " value=" << r.value;
      EXPECT_GE(r.error_estimate, 0.0);
    }
  }
}

TEST(Quadrature, ErrorEstimatesAreHonest) {
  int honest = 0;
  int total = 0;
  for (const QuadratureConfig& cfg :
       {QuadratureConfig{}, QuadratureConfig{1e-12, 1e-10}, QuadratureConfig{1e-8, 1e-6},
        QuadratureConfig{1e-6, 1e-4}}) {
    for (const auto& c : battery()) {
      const auto r = run(c, cfg);
      ++total;
      // Errors at the level of double rounding are not meaningful to bound.
      const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(c.truth));
      if (std::abs(r.value - c.truth) <= r.error_estimate + floor) ++honest;
    }
  }
  EXPECT_GE(honest, 0.95 * total) << honest << " of " << total;
}

TEST(Quadrature, ConvergedImpliesWithinTolerance) {
  for (const auto& c : battery()) {
    const QuadratureConfig cfg;
    const auto r = run(c, cfg);
    if (r.converged) {
      EXPECT_LE(r.error_estimate, std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)))
          << c.name;
    }
  }
}

TEST(Quadrature, Deterministic) {
  for (const auto& c : battery()) {
    const auto a = run(c, {});
    const auto b = run(c, {});
    EXPECT_EQ(a.value, b.value) << c.name;
    EXPECT_EQ(a.error_estimate, b.error_estimate) << c.name;
    EXPECT_EQ(a.subdivisions_used, b.subdivisions_used) << c.name;
  }
}

TEST(Quadrature, SubdivisionLimitReportsNonConvergence) {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 2;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-14;
  const auto r = integrate([](double x) { return std::sin(50.0 * x) * std::log(x); }, 0, 10, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.subdivisions_used, 2);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
  QuadratureConfig cfg;
  cfg.endpoint_policy = EndpointPolicy::kOpen;
  EXPECT_THROW(integrate([](double) { return std::nan(""); }, 0, 1, cfg), NonFiniteIntegrand);
  EXPECT_THROW(integrate([](double x) { return x > 0.5 ? INFINITY : 1.0; }, 0, 1),
               NonFiniteIntegrand);
}

TEST(Quadrature, ConfigValidation) {
  EXPECT_THROW(integrate([](double x) { return x; }, 0, 1, QuadratureConfig{0.0, 1e-8}),
               std::invalid_argument);
  EXPECT_THROW(integrate([](double x) { return x; }, 0, 1, QuadratureConfig{1e-10, -1.0}),
               std::invalid_argument);
  QuadratureConfig cfg;
  cfg.max_subdivisions = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Quadrature, ResultAccumulation) {
  QuadratureResult a{1.0, 0.1, 3, true};
  a += QuadratureResult{2.0, 0.2, 4, false};
  EXPECT_DOUBLE_EQ(a.value, 3.0);
  EXPECT_NEAR(a.error_estimate, 0.3, 1e-15);
  EXPECT_EQ(a.subdivisions_used, 7);
  EXPECT_FALSE(a.converged);
}

TEST(Quadrature, ReversedAndEmptyIntervals) {
  EXPECT_NEAR(integrate([](double x) { return x; }, 1, 0).value, -0.5, 1e-14);
  EXPECT_EQ(integrate([](double x) { return x; }, 2, 2).value, 0.0);
}

TEST(Quadrature, LogarithmicHalfLineMap) {
  QuadratureConfig cfg;
  cfg.half_line_map = HalfLineMap::kLogarithmic;
  EXPECT_NEAR(integrate_half_line([](double x) { return x * std::exp(-x); }, 0, cfg).value, 1.0,
              1e-9);
  EXPECT_NEAR(integrate_half_line([](double x) { return std::exp(-(x - 3)); }, 3, cfg).value, 1.0,
              1e-9);
}

TEST(Quadrature, EntropyIntegralExamples) {
  const Support unit{SupportKind::kInterval, 0.0, 1.0};
  const Support half{SupportKind::kHalfLine, 0.0, INFINITY};
  EXPECT_NEAR(entropy_integral([](double) { return 1.0; }, unit).value, 0.0, 1e-14);
  EXPECT_NEAR(entropy_integral([](double x) { return std::exp(-x); }, half).value, 1.0, 1e-9);
  EXPECT_NEAR(entropy_integral([](double u) { return 2 * u; }, unit).value, 0.5 - std::log(2.0),
              1e-9);
  EXPECT_NEAR(entropy_integral_log([](double x) { return -x; }, half).value, 1.0, 1e-9);
  // Density that underflows in the tail: 0 log 0 := 0.
  const Support real{SupportKind::kRealLine, -INFINITY, INFINITY};
  const double h = entropy_integral(
                       [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * kPi); }, real)
                       .value;
  EXPECT_NEAR(h, 0.5 * std::log(2 * kPi * std::numbers::e), 1e-9);
}

}  // namespace
}  // namespace rssinfo
