#include "rssinfo/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rssinfo/errors.hpp"
#include "rssinfo/order_stats.hpp"
#include "rssinfo/special_functions.hpp"

namespace rssinfo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_renyi_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw std::domain_error("Renyi order must satisfy alpha > 0, alpha != 1");
  }
}

MeasureResult closed(double value) {
  MeasureResult r;
  r.value = value;
  r.method = Method::kClosedForm;
  return r;
}

MeasureResult scaled(MeasureResult r, int cycles) {
  r.value *= cycles;
  r.error_estimate *= cycles;
  return r;
}

// Integrates over x-space, converting non-finite integrands into a
// divergence error when `divergence` is set.
QuadratureResult run(const Integrand& f, const Distribution& dist,
                     const QuadratureConfig& cfg, bool divergence = false) {
  if (!divergence) return integrate_over(f, dist, cfg);
  try {
    return integrate_over(f, dist, cfg);
  } catch (const NonFiniteIntegrand& e) {
    throw DivergentIntegral(std::string("divergence integral is not finite: ") + e.what());
  }
}

QuadratureResult run_unit(const Integrand& f, const QuadratureConfig& cfg,
                          bool divergence = false) {
  if (!divergence) return integrate(f, 0.0, 1.0, cfg);
  try {
    return integrate(f, 0.0, 1.0, cfg);
  } catch (const NonFiniteIntegrand& e) {
    throw DivergentIntegral(std::string("divergence integral is not finite: ") + e.what());
  }
}

// Adds (1/(1-a)) log I to `out`, propagating the quadrature error.
void add_renyi_term(MeasureResult& out, const QuadratureResult& q, double alpha) {
  out.diagnostics.absorb(q);
  if (!(q.value > 0.0)) {
    throw std::runtime_error("Renyi integral is not positive");
  }
  const double c = 1.0 / (1.0 - alpha);
  out.value += c * std::log(q.value);
  out.error_estimate += std::abs(c) * q.error_estimate / q.value;
}

const Exponential* as_exponential(const Distribution& dist) {
  return dist.family() == Family::kExponential ? static_cast<const Exponential*>(&dist)
                                               : nullptr;
}

void check_pair(const Design& x, const Design& y) {
  x.validate();
  y.validate();
  if (x.n != y.n) throw std::invalid_argument("designs must share the set size n");
  if (x.cycles != y.cycles) throw std::invalid_argument("designs must share the cycle count");
}

}  // namespace

// ---------------------------------------------------------------------------

Design Design::srs(int n, int cycles) {
  Design d{DesignKind::kSrs, n, std::nullopt, cycles};
  d.validate();
  return d;
}

Design Design::perfect_rss(int n, int cycles) {
  Design d{DesignKind::kPerfectRss, n, std::nullopt, cycles};
  d.validate();
  return d;
}

Design Design::imperfect_rss(RankingErrorMatrix P, int cycles) {
  const int n = P.size();
  Design d{DesignKind::kImperfectRss, n, std::move(P), cycles};
  d.validate();
  return d;
}

void Design::validate() const {
  if (n < 1) throw std::invalid_argument("design: n must be >= 1");
  if (cycles < 1) throw std::invalid_argument("design: cycle count must be >= 1");
  if (kind == DesignKind::kImperfectRss) {
    if (!ranking) throw std::invalid_argument("imperfect RSS design needs a ranking matrix");
    if (ranking->size() != n) {
      throw std::invalid_argument("ranking matrix dimension does not match n");
    }
  }
}

std::string Design::spec() const {
  const char* tag = kind == DesignKind::kSrs          ? "srs"
                    : kind == DesignKind::kPerfectRss ? "rss"
                                                      : "irss";
  return std::string(tag) + ":" + std::to_string(n);
}

const char* to_string(Method m) {
  switch (m) {
    case Method::kClosedForm: return "closed-form";
    case Method::kQuadrature: return "quadrature";
    case Method::kMonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

void Diagnostics::absorb(const QuadratureResult& r) {
  ++integrals;
  subdivisions += r.subdivisions_used;
  converged = converged && r.converged;
}

double component_log_pdf(const Design& design, const Distribution& dist, int i,
                         double x) {
  switch (design.kind) {
    case DesignKind::kSrs: return dist.log_pdf(x);
    case DesignKind::kPerfectRss: {
      const double lf = dist.log_pdf(x);
      if (lf == kNegInf || std::isnan(lf)) return kNegInf;
      const int n = design.n;
      double v = log_order_coefficient(n, i) + lf;
      if (i > 1) v += (i - 1) * dist.log_cdf(x);
      if (i < n) v += (n - i) * dist.log_survival(x);
      return std::isnan(v) ? kNegInf : v;
    }
    case DesignKind::kImperfectRss:
      return judged_log_pdf(dist, design.n, *design.ranking, i, x);
  }
  throw std::logic_error("unknown design kind");
}

double component_log_weight(const Design& design, int i, double u) {
  switch (design.kind) {
    case DesignKind::kSrs: return 0.0;
    case DesignKind::kPerfectRss: return beta_order_log_pdf(design.n, i, u);
    case DesignKind::kImperfectRss: return judged_beta_log_pdf(*design.ranking, i, u);
  }
  throw std::logic_error("unknown design kind");
}

// ---------------------------------------------------------------------------
// Shannon

MeasureResult shannon(const Design& design, const Distribution& dist,
                      const MeasureOptions& opts) {
  design.validate();
  const int n = design.n;
  if (!opts.force_numeric) {
    if (const auto* e = as_exponential(dist); e != nullptr && n == 2) {
      const RankingErrorMatrix* P = design.ranking ? &*design.ranking : nullptr;
      return scaled(closed(exp_shannon(design.kind, 2, e->rate(), P)), design.cycles);
    }
    if (design.kind != DesignKind::kImperfectRss) {
      if (const auto h = family_entropy(dist)) {
        const double gap = design.kind == DesignKind::kPerfectRss ? k_direct(n) : 0.0;
        return scaled(closed(n * *h + gap), design.cycles);
      }
    }
  }

  MeasureResult out;
  out.method = Method::kQuadrature;
  const auto absorb = [&](const QuadratureResult& q) {
    out.diagnostics.absorb(q);
    out.value += q.value;
    out.error_estimate += q.error_estimate;
  };

  if (opts.space == Space::kX) {
    for (int i = 1; i <= n; ++i) {
      absorb(entropy_integral_log(
          [&](double x) { return component_log_pdf(design, dist, i, x); },
          dist.support(), opts.quad, dist.center(), dist.scale()));
      if (design.kind == DesignKind::kSrs) {
        // All SRS components share one law.
        out.value *= n;
        out.error_estimate *= n;
        break;
      }
    }
    return scaled(out, design.cycles);
  }

  // u-space: H(component i) = -int w_i(u) [log w_i(u) + log f(F^{-1}(u))] du.
  switch (design.kind) {
    case DesignKind::kSrs: {
      const auto q = integrate([&](double u) { return -dist.log_pdf_at_quantile(u); },
                               0.0, 1.0, opts.quad);
      absorb(q);
      out.value *= n;
      out.error_estimate *= n;
      break;
    }
    case DesignKind::kPerfectRss:
      for (int i = 1; i <= n; ++i) {
        absorb(integrate(
            [&](double u) {
              const double lw = beta_order_log_pdf(n, i, u);
              return lw == kNegInf ? 0.0 : -std::exp(lw) * dist.log_pdf_at_quantile(u);
            },
            0.0, 1.0, opts.quad));
        out.value += h_uniform_order(n, i);
      }
      break;
    case DesignKind::kImperfectRss:
      for (int i = 1; i <= n; ++i) {
        absorb(integrate(
            [&](double u) {
              const double lw = judged_beta_log_pdf(*design.ranking, i, u);
              if (lw == kNegInf) return 0.0;
              return -std::exp(lw) * (lw + dist.log_pdf_at_quantile(u));
            },
            0.0, 1.0, opts.quad));
      }
      break;
  }
  return scaled(out, design.cycles);
}

// ---------------------------------------------------------------------------
// Renyi

MeasureResult renyi(const Design& design, const Distribution& dist, double alpha,
                    const MeasureOptions& opts) {
  design.validate();
  require_renyi_alpha(alpha);
  const int n = design.n;
  if (!opts.force_numeric) {
    if (const auto* e = as_exponential(dist);
        e != nullptr && n == 2 && design.kind != DesignKind::kImperfectRss) {
      const auto comp = design.kind == DesignKind::kSrs ? RenyiComponent::kSrsTotal
                                                        : RenyiComponent::kRssTotal;
      return scaled(closed(exp_renyi(comp, 2, e->rate(), alpha)), design.cycles);
    }
    if (design.kind == DesignKind::kSrs) {
      if (const auto h = family_renyi(dist, alpha)) {
        return scaled(closed(n * *h), design.cycles);
      }
    }
  }

  MeasureResult out;
  out.method = Method::kQuadrature;
  const int components = design.kind == DesignKind::kSrs ? 1 : n;
  const double multiplicity = design.kind == DesignKind::kSrs ? n : 1.0;
  for (int i = 1; i <= components; ++i) {
    QuadratureResult q;
    if (opts.space == Space::kU) {
      q = integrate(
          [&](double u) {
            const double lw = component_log_weight(design, i, u);
            if (lw == kNegInf) return 0.0;
            return std::exp(alpha * lw + (alpha - 1.0) * dist.log_pdf_at_quantile(u));
          },
          0.0, 1.0, opts.quad);
    } else {
      q = run(
          [&](double x) {
            const double l = component_log_pdf(design, dist, i, x);
            return l == kNegInf ? 0.0 : std::exp(alpha * l);
          },
          dist, opts.quad);
    }
    MeasureResult term;
    add_renyi_term(term, q, alpha);
    out.value += multiplicity * term.value;
    out.error_estimate += multiplicity * term.error_estimate;
    out.diagnostics.integrals += term.diagnostics.integrals;
    out.diagnostics.subdivisions += term.diagnostics.subdivisions;
    out.diagnostics.converged = out.diagnostics.converged && term.diagnostics.converged;
  }
  return scaled(out, design.cycles);
}

MeasureResult renyi_gap_binomial(const Distribution& dist, int n, double alpha,
                                 const MeasureOptions& opts) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::domain_error("renyi_gap_binomial: alpha must be > 1");
  }
  if (n < 1) throw std::invalid_argument("renyi_gap_binomial: n must be >= 1");
  MeasureResult out;
  out.method = Method::kQuadrature;
  if (n == 1) return out;

  const auto base = run(
      [&](double x) {
        const double l = dist.log_pdf(x);
        return l == kNegInf ? 0.0 : std::exp(alpha * l);
      },
      dist, opts.quad);
  out.diagnostics.absorb(base);
  const double c = 1.0 / (1.0 - alpha);
  out.value = alpha * c * n * std::log(double(n));
  for (int i = 1; i <= n; ++i) {
    // E_g[ Bin(n-1, F(W)) pmf at i-1 ^ alpha ], g proportional to f^alpha.
    const double log_coeff = log_binomial(n - 1, i - 1);
    const auto q = run(
        [&](double x) {
          const double l = dist.log_pdf(x);
          if (l == kNegInf) return 0.0;
          double lb = log_coeff;
          if (i > 1) lb += (i - 1) * dist.log_cdf(x);
          if (i < n) lb += (n - i) * dist.log_survival(x);
          if (std::isnan(lb) || lb == kNegInf) return 0.0;
          return std::exp(alpha * (l + lb));
        },
        dist, opts.quad);
    out.diagnostics.absorb(q);
    if (!(q.value > 0.0)) throw std::runtime_error("binomial Renyi integral is not positive");
    out.value += c * (std::log(q.value) - std::log(base.value));
    out.error_estimate +=
        std::abs(c) * (q.error_estimate / q.value + base.error_estimate / base.value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kullback-Leibler

MeasureResult kl_srs_vs_design(const Design& design, const Distribution& dist,
                               const MeasureOptions& opts) {
  design.validate();
  if (!design.is_rss()) {
    throw std::invalid_argument("kl_srs_vs_design: design must be an RSS design");
  }
  const int n = design.n;
  if (opts.space == Space::kX) {
    return kl_two_sample(Design::srs(n, design.cycles), dist, design, dist, opts);
  }
  if (design.kind == DesignKind::kPerfectRss && !opts.force_numeric) {
    return scaled(closed(d_n(n)), design.cycles);
  }
  MeasureResult out;
  out.method = Method::kQuadrature;
  for (int i = 1; i <= n; ++i) {
    const auto q = run_unit(
        [&](double u) { return -component_log_weight(design, i, u); }, opts.quad, true);
    out.diagnostics.absorb(q);
    out.value += q.value;
    out.error_estimate += q.error_estimate;
  }
  return scaled(out, design.cycles);
}

MeasureResult kl_two_sample(const Design& design_x, const Distribution& f,
                            const Design& design_y, const Distribution& g,
                            const MeasureOptions& opts) {
  check_pair(design_x, design_y);
  const int n = design_x.n;
  MeasureResult out;
  out.method = Method::kQuadrature;
  const bool both_srs = !design_x.is_rss() && !design_y.is_rss();
  for (int i = 1; i <= n; ++i) {
    const auto q = run(
        [&](double x) {
          const double lx = component_log_pdf(design_x, f, i, x);
          if (lx == kNegInf) return 0.0;
          const double ly = component_log_pdf(design_y, g, i, x);
          return std::exp(lx) * (lx - ly);
        },
        f, opts.quad, true);
    out.diagnostics.absorb(q);
    if (both_srs) {
      out.value = n * q.value;
      out.error_estimate = n * q.error_estimate;
      break;
    }
    out.value += q.value;
    out.error_estimate += q.error_estimate;
  }
  return scaled(out, design_x.cycles);
}

MeasureResult a_n(const Distribution& f, const Distribution& g, int n,
                  const MeasureOptions& opts, AnForm form) {
  if (n < 1) throw std::invalid_argument("a_n: n must be >= 1");
  MeasureResult out;
  out.method = Method::kQuadrature;
  if (n == 1) return out;
  const double nn1 = n * (n - 1.0);

  if (form == AnForm::kReduced) {
    const auto q = run_unit(
        [&](double u) {
          const double x = f.quantile(u);
          return u * g.log_cdf(x) + (1.0 - u) * g.log_survival(x);
        },
        opts.quad, true);
    out.diagnostics.absorb(q);
    out.value = -0.5 * nn1 - nn1 * q.value;
    out.error_estimate = nn1 * q.error_estimate;
    return out;
  }

  for (int i = 1; i <= n; ++i) {
    const auto q = run_unit(
        [&](double u) {
          const double w = beta_order_pdf(n, i, u);
          if (w == 0.0) return 0.0;
          const double x = f.quantile(u);
          double v = 0.0;
          if (i > 1) v += (i - 1) * (std::log(u) - g.log_cdf(x));
          if (i < n) v += (n - i) * (std::log1p(-u) - g.log_survival(x));
          return w * v;
        },
        opts.quad, true);
    out.diagnostics.absorb(q);
    out.value += q.value;
    out.error_estimate += q.error_estimate;
  }
  return out;
}

MeasureResult kld_symmetric(const Design& design_x, const Distribution& f,
                            const Design& design_y, const Distribution& g,
                            const MeasureOptions& opts) {
  MeasureResult forward = kl_two_sample(design_x, f, design_y, g, opts);
  const MeasureResult backward = kl_two_sample(design_y, g, design_x, f, opts);
  forward.value += backward.value;
  forward.error_estimate += backward.error_estimate;
  forward.diagnostics.integrals += backward.diagnostics.integrals;
  forward.diagnostics.subdivisions += backward.diagnostics.subdivisions;
  forward.diagnostics.converged =
      forward.diagnostics.converged && backward.diagnostics.converged;
  return forward;
}

}  // namespace rssinfo
