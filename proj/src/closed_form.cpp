#include "rssinfo/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rssinfo/errors.hpp"
#include "rssinfo/special_functions.hpp"

namespace rssinfo {

namespace {

void require_n(int n, int min_n = 1) {
  if (n < min_n) {
    throw std::invalid_argument("set size must be >= " + std::to_string(min_n));
  }
}

void require_renyi_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw std::domain_error("Renyi order must satisfy alpha > 0, alpha != 1");
  }
}

}  // namespace

double h_uniform_order(int n, int i) {
  if (n < 1 || i < 1 || i > n) {
    throw std::invalid_argument("h_uniform_order: require 1 <= i <= n");
  }
  const double psi_n1 = digamma(n + 1.0);
  return log_beta(i, n - i + 1.0) - (i - 1) * (digamma(i) - psi_n1) -
         (n - i) * (digamma(n - i + 1.0) - psi_n1);
}

double k_direct(int n) {
  require_n(n);
  double value = 0.0;
  for (int j = 1; j < n; ++j) value += (n - 2.0 * j) * std::log(double(j));
  value -= n * std::log(double(n));
  double psi_sum = 0.0;
  for (int i = 2; i <= n; ++i) psi_sum += (i - 1) * digamma(i);
  value += -2.0 * psi_sum + n * (n - 1.0) * digamma(n + 1.0);
  return value;
}

double k_recursive(int n) {
  require_n(n);
  double k = 0.0;
  for (int m = 1; m < n; ++m) {
    k += m + log_gamma(m + 1.0) - (m + 1.0) * std::log(m + 1.0);
  }
  return k;
}

double d_n(int n) {
  require_n(n);
  double s = 0.0;
  for (int i = 1; i <= n; ++i) s += std::log(double(i)) + log_binomial(n, i);
  return -s + n * (n - 1.0);
}

double psi_bound(double alpha, int n) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::domain_error("psi_bound: alpha must be > 1");
  }
  require_n(n, 2);
  const double m1 = n - 1.0;
  double s = 0.0;
  for (int i = 1; i <= n; ++i) {
    double term = std::log(double(n)) + log_binomial(n - 1, i - 1);
    if (i > 1) term += (i - 1) * std::log((i - 1) / m1);
    if (i < n) term += (n - i) * std::log((n - i) / m1);
    s += term;
  }
  return alpha / (1.0 - alpha) * s;
}

double eta(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("eta: a must lie in [0, 1]");
  const double delta = 0.5 - a;
  if (std::abs(delta) < 1e-3) {
    // Even Taylor series about a = 1/2; the next term is O(delta^6).
    const double d2 = delta * delta;
    return std::numbers::ln2 - 2.0 * d2 / 3.0 - 4.0 * d2 * d2 / 15.0;
  }
  const double b = 1.0 - a;
  return 0.5 + (a * xlogx(a) - b * xlogx(b)) / (1.0 - 2.0 * a);
}

double exp_shannon(DesignKind kind, int n, double rate, const RankingErrorMatrix* P) {
  if (n != 2) throw UnsupportedClosedForm("exponential Shannon closed form needs n = 2");
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
  switch (kind) {
    case DesignKind::kSrs: return 2.0 - 2.0 * std::log(rate);
    case DesignKind::kPerfectRss: return 3.0 - 2.0 * std::log(2.0 * rate);
    case DesignKind::kImperfectRss: {
      if (P == nullptr || P->size() != 2) {
        throw std::invalid_argument("imperfect closed form needs a 2x2 ranking matrix");
      }
      const double p11 = (*P)(1, 1);
      const double p22 = (*P)(2, 2);
      return 2.0 - 2.0 * std::log(2.0 * rate) + (p22 - p11) + eta(p11) + eta(p22);
    }
  }
  throw std::logic_error("unknown design kind");
}

double exp_renyi(RenyiComponent component, int n, double rate, double alpha) {
  if (n != 2) throw UnsupportedClosedForm("exponential Renyi closed form needs n = 2");
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
  require_renyi_alpha(alpha);
  const double c = 1.0 / (1.0 - alpha);
  const double log_rate = std::log(rate);
  const double first = -log_rate - std::numbers::ln2 - c * std::log(alpha);
  const double second = -log_rate + alpha * c * std::numbers::ln2 +
                        c * (log_gamma(alpha + 1.0) + log_gamma(alpha) -
                             log_gamma(2.0 * alpha + 1.0));
  switch (component) {
    case RenyiComponent::kSrsTotal: return -2.0 * log_rate - 2.0 * c * std::log(alpha);
    case RenyiComponent::kFirstOrder: return first;
    case RenyiComponent::kSecondOrder: return second;
    case RenyiComponent::kRssTotal: return first + second;
  }
  throw std::logic_error("unknown Renyi component");
}

std::optional<double> family_entropy(const Distribution& dist) {
  const auto p = dist.parameters();
  switch (dist.family()) {
    case Family::kUniform: return std::log(p[1] - p[0]);
    case Family::kExponential: return 1.0 - std::log(p[0]);
    case Family::kNormal:
      return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * p[1] * p[1]);
    case Family::kWeibull:
      return std::numbers::egamma * (1.0 - 1.0 / p[0]) + std::log(p[1] / p[0]) + 1.0;
  }
  return std::nullopt;
}

std::optional<double> family_renyi(const Distribution& dist, double alpha) {
  require_renyi_alpha(alpha);
  const auto p = dist.parameters();
  const double c = 1.0 / (1.0 - alpha);
  switch (dist.family()) {
    case Family::kUniform: return std::log(p[1] - p[0]);
    case Family::kExponential: return -std::log(p[0]) - c * std::log(alpha);
    case Family::kNormal:
      return std::log(p[1]) + 0.5 * std::log(2.0 * std::numbers::pi) -
             0.5 * c * std::log(alpha);
    case Family::kWeibull: {
      const double k = p[0];
      const double theta = p[1];
      const double shape = (alpha * (k - 1.0) + 1.0) / k;
      // At shape <= 0 the integral of f^a diverges at the origin.
      if (!(shape > 1e-12)) return std::nullopt;
      const double log_int = alpha * std::log(k / theta) + std::log(theta / k) -
                             shape * std::log(alpha) + log_gamma(shape);
      return c * log_int;
    }
  }
  return std::nullopt;
}

}  // namespace rssinfo
