#include "rssinfo/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rssinfo/errors.hpp"

namespace rssinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// log(1 - e^{-t}) for t >= 0.
double log1mexp(double t) {
  return t > std::numbers::ln2 ? std::log1p(-std::exp(-t))
                               : std::log(-std::expm1(-t));
}

// log Phi(z), stable far into the lower tail.
double log_std_normal_cdf(double z) {
  if (z > -37.0) return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
  const double r = 1.0 / (z * z);
  const double series =
      1.0 - r * (1.0 - r * (3.0 - r * (15.0 - r * (105.0 - r * 945.0))));
  return -0.5 * z * z - std::log(-z) - kLogSqrt2Pi + std::log(series);
}

}  // namespace

bool Support::contains(double x) const {
  switch (kind) {
    case SupportKind::kInterval: return x >= lower && x <= upper;
    case SupportKind::kHalfLine: return x >= lower;
    case SupportKind::kRealLine: return !std::isnan(x);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Distribution defaults

double Distribution::log_pdf(double x) const {
  const double p = pdf(x);
  return p > 0.0 ? std::log(p) : -kInf;
}

double Distribution::log_cdf(double x) const {
  const double c = cdf(x);
  return c > 0.0 ? std::log(c) : -kInf;
}

double Distribution::log_survival(double x) const {
  const double s = survival(x);
  return s > 0.0 ? std::log(s) : -kInf;
}

double Distribution::pdf_at_quantile(double u) const { return pdf(quantile(u)); }

double Distribution::log_pdf_at_quantile(double u) const {
  const double p = pdf_at_quantile(u);
  return p > 0.0 ? std::log(p) : -kInf;
}

void Distribution::check_unit_open(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("quantile: probability must lie in (0, 1), got " +
                            std::to_string(u));
  }
}

std::string Distribution::spec() const {
  std::ostringstream os;
  os.precision(12);
  switch (family()) {
    case Family::kUniform: os << "unif"; break;
    case Family::kExponential: os << "exp"; break;
    case Family::kNormal: os << "norm"; break;
    case Family::kWeibull: os << "weibull"; break;
  }
  const auto params = parameters();
  if (family() == Family::kUniform && params[0] == 0.0 && params[1] == 1.0) {
    return os.str();
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    os << (k == 0 ? ':' : ',') << params[k];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Uniform

Uniform::Uniform(double lower, double upper) : lower_(lower), upper_(upper) {
  require(std::isfinite(lower) && std::isfinite(upper) && lower < upper,
          "Uniform: require finite lower < upper");
}

Support Uniform::support() const {
  return {SupportKind::kInterval, lower_, upper_};
}

double Uniform::pdf(double x) const {
  return (x >= lower_ && x <= upper_) ? 1.0 / (upper_ - lower_) : 0.0;
}

double Uniform::log_pdf(double x) const {
  return (x >= lower_ && x <= upper_) ? -std::log(upper_ - lower_) : -kInf;
}

double Uniform::cdf(double x) const {
  if (x <= lower_) return 0.0;
  if (x >= upper_) return 1.0;
  return (x - lower_) / (upper_ - lower_);
}

double Uniform::survival(double x) const {
  if (x <= lower_) return 1.0;
  if (x >= upper_) return 0.0;
  return (upper_ - x) / (upper_ - lower_);
}

double Uniform::quantile(double u) const {
  check_unit_open(u);
  return lower_ + u * (upper_ - lower_);
}

double Uniform::pdf_at_quantile(double u) const {
  check_unit_open(u);
  return 1.0 / (upper_ - lower_);
}

// ---------------------------------------------------------------------------
// Exponential

Exponential::Exponential(double rate) : rate_(rate) {
  require(std::isfinite(rate) && rate > 0.0, "Exponential: rate must be > 0");
}

Support Exponential::support() const {
  return {SupportKind::kHalfLine, 0.0, kInf};
}

double Exponential::pdf(double x) const {
  return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
}

double Exponential::log_pdf(double x) const {
  return x < 0.0 ? -kInf : std::log(rate_) - rate_ * x;
}

double Exponential::cdf(double x) const {
  return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
}

double Exponential::survival(double x) const {
  return x <= 0.0 ? 1.0 : std::exp(-rate_ * x);
}

double Exponential::log_cdf(double x) const {
  return x <= 0.0 ? -kInf : log1mexp(rate_ * x);
}

double Exponential::log_survival(double x) const {
  return x <= 0.0 ? 0.0 : -rate_ * x;
}

double Exponential::quantile(double u) const {
  check_unit_open(u);
  return -std::log1p(-u) / rate_;
}

double Exponential::pdf_at_quantile(double u) const {
  check_unit_open(u);
  return rate_ * (1.0 - u);
}

// ---------------------------------------------------------------------------
// Normal

double standard_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("standard_normal_quantile: u must lie in (0, 1)");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  const auto tail = [&](double q) {
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  };

  double x;
  if (u < kLow) {
    x = tail(std::sqrt(-2.0 * std::log(u)));
  } else if (u > 1.0 - kLow) {
    x = -tail(std::sqrt(-2.0 * std::log1p(-u)));
  } else {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  // Newton step, measuring the residual on whichever tail keeps precision.
  const double density = std::exp(-0.5 * x * x - kLogSqrt2Pi);
  if (density > 0.0) {
    if (u <= 0.5) {
      const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - u;
      x -= e / density;
    } else {
      const double e = 0.5 * std::erfc(x / std::numbers::sqrt2) - (1.0 - u);
      x += e / density;
    }
  }
  return x;
}

Normal::Normal(double mean, double sd) : mean_(mean), sd_(sd) {
  require(std::isfinite(mean), "Normal: mean must be finite");
  require(std::isfinite(sd) && sd > 0.0, "Normal: scale must be > 0");
}

Support Normal::support() const {
  return {SupportKind::kRealLine, -kInf, kInf};
}

double Normal::pdf(double x) const { return std::exp(log_pdf(x)); }

double Normal::log_pdf(double x) const {
  const double z = (x - mean_) / sd_;
  return -0.5 * z * z - kLogSqrt2Pi - std::log(sd_);
}

double Normal::cdf(double x) const {
  return 0.5 * std::erfc(-(x - mean_) / (sd_ * std::numbers::sqrt2));
}

double Normal::survival(double x) const {
  return 0.5 * std::erfc((x - mean_) / (sd_ * std::numbers::sqrt2));
}

double Normal::log_cdf(double x) const {
  return log_std_normal_cdf((x - mean_) / sd_);
}

double Normal::log_survival(double x) const {
  return log_std_normal_cdf(-(x - mean_) / sd_);
}

double Normal::quantile(double u) const {
  check_unit_open(u);
  return mean_ + sd_ * standard_normal_quantile(u);
}

double Normal::pdf_at_quantile(double u) const {
  check_unit_open(u);
  const double z = standard_normal_quantile(u);
  return std::exp(-0.5 * z * z - kLogSqrt2Pi) / sd_;
}

// ---------------------------------------------------------------------------
// Weibull

Weibull::Weibull(double shape, double scale) : shape_(shape), scale_(scale) {
  require(std::isfinite(shape) && shape > 0.0, "Weibull: shape must be > 0");
  require(std::isfinite(scale) && scale > 0.0, "Weibull: scale must be > 0");
}

Support Weibull::support() const { return {SupportKind::kHalfLine, 0.0, kInf}; }

double Weibull::pdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (shape_ == 1.0) return 1.0 / scale_;
    return shape_ > 1.0 ? 0.0 : kInf;
  }
  return std::exp(log_pdf(x));
}

double Weibull::log_pdf(double x) const {
  if (x < 0.0) return -kInf;
  if (x == 0.0) {
    if (shape_ == 1.0) return -std::log(scale_);
    return shape_ > 1.0 ? -kInf : kInf;
  }
  const double z = x / scale_;
  return std::log(shape_ / scale_) + (shape_ - 1.0) * std::log(z) -
         std::pow(z, shape_);
}

double Weibull::cdf(double x) const {
  return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
}

double Weibull::survival(double x) const {
  return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / scale_, shape_));
}

double Weibull::log_cdf(double x) const {
  return x <= 0.0 ? -kInf : log1mexp(std::pow(x / scale_, shape_));
}

double Weibull::log_survival(double x) const {
  return x <= 0.0 ? 0.0 : -std::pow(x / scale_, shape_);
}

double Weibull::quantile(double u) const {
  check_unit_open(u);
  return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
}

double Weibull::pdf_at_quantile(double u) const {
  check_unit_open(u);
  const double t = -std::log1p(-u);
  return (shape_ / scale_) * std::pow(t, (shape_ - 1.0) / shape_) * (1.0 - u);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<double> parse_numbers(std::string_view list, std::string_view whole) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = list.find(',', start);
    const std::string token(
        list.substr(start, comma == std::string_view::npos ? list.npos : comma - start));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ParseError("invalid number in distribution '" + std::string(whole) + "'",
                       token);
    }
    if (used != token.size()) {
      throw ParseError("invalid number in distribution '" + std::string(whole) + "'",
                       token);
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

DistributionPtr parse_distribution(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    params = parse_numbers(text.substr(colon + 1), text);
  }
  const auto expect = [&](std::size_t count) {
    if (params.size() != count) {
      throw ParseError("wrong number of parameters for '" + std::string(name) + "'",
                       std::string(text));
    }
  };
  try {
    if (name == "exp") {
      expect(1);
      return std::make_shared<Exponential>(params[0]);
    }
    if (name == "unif") {
      if (params.empty()) return std::make_shared<Uniform>();
      expect(2);
      return std::make_shared<Uniform>(params[0], params[1]);
    }
    if (name == "norm") {
      if (params.empty()) return std::make_shared<Normal>(0.0, 1.0);
      expect(2);
      return std::make_shared<Normal>(params[0], params[1]);
    }
    if (name == "weibull") {
      expect(2);
      return std::make_shared<Weibull>(params[0], params[1]);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), std::string(text));
  }
  throw ParseError("unknown distribution family", std::string(name));
}

}  // namespace rssinfo
