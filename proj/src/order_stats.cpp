#include "rssinfo/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rssinfo/special_functions.hpp"

namespace rssinfo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kTableMax = 256;

void check_rank(int n, int i) {
  if (n < 1 || i < 1 || i > n) {
    throw std::invalid_argument("order statistic: require 1 <= i <= n, got n=" +
                                std::to_string(n) + ", i=" + std::to_string(i));
  }
}

const std::vector<double>& log_factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableMax + 1, 0.0);
    for (int k = 2; k <= kTableMax; ++k) t[k] = t[k - 1] + std::log(double(k));
    return t;
  }();
  return table;
}

// log(sum_k w_k e^{l_k}) over the positive weights.
template <typename LogTerm>
double log_mixture(std::span<const double> weights, LogTerm&& log_term) {
  double peak = kNegInf;
  double buffer[kTableMax];
  const int n = static_cast<int>(weights.size());
  for (int r = 0; r < n; ++r) {
    buffer[r] = weights[r] > 0.0 ? std::log(weights[r]) + log_term(r + 1) : kNegInf;
    peak = std::max(peak, buffer[r]);
  }
  if (peak == kNegInf) return kNegInf;
  double s = 0.0;
  for (int r = 0; r < n; ++r) s += std::exp(buffer[r] - peak);
  return peak + std::log(s);
}

void check_matrix(int n, const RankingErrorMatrix& P) {
  if (P.size() != n) {
    throw std::invalid_argument("ranking matrix is " + std::to_string(P.size()) +
                                "x" + std::to_string(P.size()) +
                                " but the set size is " + std::to_string(n));
  }
  if (n > kTableMax) throw std::invalid_argument("set size too large");
}

}  // namespace

OrderStatSpec::OrderStatSpec(DistributionPtr d, int n_, int i_)
    : dist(std::move(d)), n(n_), i(i_) {
  check_rank(n, i);
  if (!dist) throw std::invalid_argument("order statistic: null distribution");
}

double log_order_coefficient(int n, int i) {
  check_rank(n, i);
  if (n <= kTableMax) {
    const auto& lf = log_factorials();
    return lf[n] - lf[i - 1] - lf[n - i];
  }
  return -log_beta(i, n - i + 1.0);
}

double beta_order_log_pdf(int n, int i, double u) {
  check_rank(n, i);
  if (!(u >= 0.0 && u <= 1.0)) return kNegInf;
  double value = log_order_coefficient(n, i);
  if (i > 1) value += (i - 1) * std::log(u);
  if (i < n) value += (n - i) * std::log1p(-u);
  return value;
}

double beta_order_pdf(int n, int i, double u) {
  const double l = beta_order_log_pdf(n, i, u);
  return l == kNegInf ? 0.0 : std::exp(l);
}

double order_stat_log_pdf(const OrderStatSpec& spec, double x) {
  const Distribution& d = *spec.dist;
  const double lf = d.log_pdf(x);
  if (lf == kNegInf || std::isnan(lf)) return kNegInf;
  double value = log_order_coefficient(spec.n, spec.i) + lf;
  if (spec.i > 1) value += (spec.i - 1) * d.log_cdf(x);
  if (spec.i < spec.n) value += (spec.n - spec.i) * d.log_survival(x);
  return std::isnan(value) ? kNegInf : value;
}

double order_stat_pdf(const OrderStatSpec& spec, double x) {
  const double l = order_stat_log_pdf(spec, x);
  return l == kNegInf ? 0.0 : std::exp(l);
}

double judged_beta_log_pdf(const RankingErrorMatrix& P, int i, double u) {
  const int n = P.size();
  check_rank(n, i);
  check_matrix(n, P);
  if (!(u >= 0.0 && u <= 1.0)) return kNegInf;
  return log_mixture(P.row(i), [&](int r) { return beta_order_log_pdf(n, r, u); });
}

double judged_beta_pdf(const RankingErrorMatrix& P, int i, double u) {
  const double l = judged_beta_log_pdf(P, i, u);
  return l == kNegInf ? 0.0 : std::exp(l);
}

double judged_log_pdf(const Distribution& dist, int n, const RankingErrorMatrix& P,
                      int i, double x) {
  check_rank(n, i);
  check_matrix(n, P);
  const double lf = dist.log_pdf(x);
  if (lf == kNegInf || std::isnan(lf)) return kNegInf;
  const double lc = dist.log_cdf(x);
  const double ls = dist.log_survival(x);
  return log_mixture(P.row(i), [&](int r) {
    double v = log_order_coefficient(n, r) + lf;
    if (r > 1) v += (r - 1) * lc;
    if (r < n) v += (n - r) * ls;
    return std::isnan(v) ? kNegInf : v;
  });
}

double judged_pdf(const Distribution& dist, int n, const RankingErrorMatrix& P,
                  int i, double x) {
  const double l = judged_log_pdf(dist, n, P, i, x);
  return l == kNegInf ? 0.0 : std::exp(l);
}

}  // namespace rssinfo
