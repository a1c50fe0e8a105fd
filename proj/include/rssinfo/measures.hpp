#pragma once

#include <optional>
#include <string>

#include "rssinfo/closed_form.hpp"
#include "rssinfo/distributions.hpp"
#include "rssinfo/quadrature.hpp"
#include "rssinfo/ranking_error.hpp"

namespace rssinfo {

/// Sampling design: SRS(n), perfect RSS(n) or imperfect RSS(n, P), each
/// repeated over `cycles` independent cycles (measures scale linearly).
struct Design {
  DesignKind kind = DesignKind::kSrs;
  int n = 1;
  std::optional<RankingErrorMatrix> ranking;
  int cycles = 1;

  static Design srs(int n, int cycles = 1);
  static Design perfect_rss(int n, int cycles = 1);
  static Design imperfect_rss(RankingErrorMatrix P, int cycles = 1);

  void validate() const;
  bool is_rss() const { return kind != DesignKind::kSrs; }
  // "srs:2", "rss:3", "irss:2" (matrix not included).
  std::string spec() const;
};

enum class Method { kClosedForm, kQuadrature, kMonteCarlo };
const char* to_string(Method m);

struct Diagnostics {
  int integrals = 0;
  int subdivisions = 0;
  bool converged = true;

  void absorb(const QuadratureResult& r);
};

struct MeasureResult {
  double value = 0.0;           // nats
  double error_estimate = 0.0;  // >= 0
  Method method = Method::kClosedForm;
  Diagnostics diagnostics;
};

// Integration space. kDefault picks u-space (quantile substitution) for
// Shannon and KL, and x-space for Renyi.
enum class Space { kDefault, kU, kX };

struct MeasureOptions {
  QuadratureConfig quad;
  bool force_numeric = false;
  Space space = Space::kDefault;
};

enum class AnForm { kReduced, kDefinition };

// log density of component i (1-based) of the design's joint law at x.
double component_log_pdf(const Design& design, const Distribution& dist, int i,
                         double x);
// log of the u-space weight of component i: 0 for SRS, the Beta(i, n-i+1)
// log-density for perfect RSS, the judged mixture for imperfect RSS.
double component_log_weight(const Design& design, int i, double u);

MeasureResult shannon(const Design& design, const Distribution& dist,
                      const MeasureOptions& opts = {});

// alpha > 0, alpha != 1 (std::domain_error otherwise).
MeasureResult renyi(const Design& design, const Distribution& dist, double alpha,
                    const MeasureOptions& opts = {});

// H_a(RSS) - H_a(SRS) through the f^a-weighted binomial representation;
// alpha > 1.
MeasureResult renyi_gap_binomial(const Distribution& dist, int n, double alpha,
                                 const MeasureOptions& opts = {});

// K(SRS, design) for an RSS design; distribution-free, so the default
// path never touches `dist`. Space::kX integrates in x-space instead.
MeasureResult kl_srs_vs_design(const Design& design, const Distribution& dist,
                               const MeasureOptions& opts = {});

// K between the joint laws of design_x over F and design_y over G.
// Designs must share n and cycle count. Throws DivergentIntegral when the
// integrand is not finite (e.g. F not absolutely continuous w.r.t. G).
MeasureResult kl_two_sample(const Design& design_x, const Distribution& f,
                            const Design& design_y, const Distribution& g,
                            const MeasureOptions& opts = {});

// A_n(F, G) = K(RSS_F, RSS_G) - K(SRS_F, SRS_G).
MeasureResult a_n(const Distribution& f, const Distribution& g, int n,
                  const MeasureOptions& opts = {}, AnForm form = AnForm::kReduced);

MeasureResult kld_symmetric(const Design& design_x, const Distribution& f,
                            const Design& design_y, const Distribution& g,
                            const MeasureOptions& opts = {});

}  // namespace rssinfo
