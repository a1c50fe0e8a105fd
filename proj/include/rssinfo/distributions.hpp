#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace rssinfo {

enum class SupportKind { kInterval, kHalfLine, kRealLine };

// kInterval: [lower, upper]; kHalfLine: [lower, inf); kRealLine: (-inf, inf).
struct Support {
  SupportKind kind;
  double lower;
  double upper;

  bool contains(double x) const;
};

enum class Family { kUniform, kExponential, kNormal, kWeibull };

/// A continuous parametric law. Instances are immutable once constructed;
/// parameters are validated in the constructor of each family.
///
/// Besides the usual pdf/cdf/quantile triple, the interface exposes the
/// log-scale cdf/survival and the density evaluated at a quantile, which
/// are the primitives the order-statistic integrands need in u-space.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual Family family() const = 0;
  virtual std::vector<double> parameters() const = 0;
  virtual Support support() const = 0;

  virtual double pdf(double x) const = 0;
  virtual double log_pdf(double x) const;
  virtual double cdf(double x) const = 0;
  virtual double survival(double x) const = 0;
  virtual double log_cdf(double x) const;
  virtual double log_survival(double x) const;

  // Throws std::domain_error unless 0 < u < 1.
  virtual double quantile(double u) const = 0;
  virtual double pdf_at_quantile(double u) const;
  double log_pdf_at_quantile(double u) const;

  // Typical length scale and centre; used to place half-line and
  // real-line substitutions.
  virtual double scale() const { return 1.0; }
  virtual double center() const { return 0.0; }

  // Canonical textual form, e.g. "exp:1", "norm:0,1".
  std::string spec() const;

 protected:
  static void check_unit_open(double u);
};

using DistributionPtr = std::shared_ptr<const Distribution>;

class Uniform final : public Distribution {
 public:
  Uniform(double lower = 0.0, double upper = 1.0);

  Family family() const override { return Family::kUniform; }
  std::vector<double> parameters() const override { return {lower_, upper_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double survival(double x) const override;
  double quantile(double u) const override;
  double pdf_at_quantile(double u) const override;
  double scale() const override { return upper_ - lower_; }
  double center() const override { return 0.5 * (lower_ + upper_); }

 private:
  double lower_;
  double upper_;
};

class Exponential final : public Distribution {
 public:
  explicit Exponential(double rate);

  double rate() const { return rate_; }

  Family family() const override { return Family::kExponential; }
  std::vector<double> parameters() const override { return {rate_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double survival(double x) const override;
  double log_cdf(double x) const override;
  double log_survival(double x) const override;
  double quantile(double u) const override;
  double pdf_at_quantile(double u) const override;
  double scale() const override { return 1.0 / rate_; }

 private:
  double rate_;
};

class Normal final : public Distribution {
 public:
  Normal(double mean, double sd);

  Family family() const override { return Family::kNormal; }
  std::vector<double> parameters() const override { return {mean_, sd_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double survival(double x) const override;
  double log_cdf(double x) const override;
  double log_survival(double x) const override;
  double quantile(double u) const override;
  double pdf_at_quantile(double u) const override;
  double scale() const override { return sd_; }
  double center() const override { return mean_; }

 private:
  double mean_;
  double sd_;
};

class Weibull final : public Distribution {
 public:
  Weibull(double shape, double scale);

  Family family() const override { return Family::kWeibull; }
  std::vector<double> parameters() const override { return {shape_, scale_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double survival(double x) const override;
  double log_cdf(double x) const override;
  double log_survival(double x) const override;
  double quantile(double u) const override;
  double pdf_at_quantile(double u) const override;
  double scale() const override { return scale_; }

 private:
  double shape_;
  double scale_;
};

// Standard normal quantile. Rational approximation (|rel error| < 1.2e-9)
// followed by one Newton step against the erfc-based cdf.
double standard_normal_quantile(double u);

// Parses "exp:1.0", "unif", "unif:a,b", "norm:0,1", "weibull:2,1".
// Throws ParseError naming the offending token.
DistributionPtr parse_distribution(std::string_view text);

}  // namespace rssinfo
