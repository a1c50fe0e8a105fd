#pragma once

#include "rssinfo/distributions.hpp"
#include "rssinfo/ranking_error.hpp"

namespace rssinfo {

// The i-th smallest of n iid draws from dist (1 <= i <= n).
struct OrderStatSpec {
  OrderStatSpec(DistributionPtr dist, int n, int i);

  DistributionPtr dist;
  int n;
  int i;
};

// log[n! / ((i-1)! (n-i)!)], the order-statistic density coefficient.
double log_order_coefficient(int n, int i);

// Density of Beta(i, n - i + 1) at u, with 0^0 = 1 at the rank extremes.
double beta_order_pdf(int n, int i, double u);
double beta_order_log_pdf(int n, int i, double u);

double order_stat_pdf(const OrderStatSpec& spec, double x);
double order_stat_log_pdf(const OrderStatSpec& spec, double x);

// u-space judged density: sum_r P(i, r) * Beta(r, n - r + 1) pdf at u, i.e.
// f_[i](F^{-1}(u)) / f(F^{-1}(u)).
double judged_beta_pdf(const RankingErrorMatrix& P, int i, double u);
double judged_beta_log_pdf(const RankingErrorMatrix& P, int i, double u);

// Density of the unit judged to have rank i: sum_r P(i, r) f_(r)(x).
// Throws std::invalid_argument if P is not n x n.
double judged_pdf(const Distribution& dist, int n, const RankingErrorMatrix& P,
                  int i, double x);
double judged_log_pdf(const Distribution& dist, int n,
                      const RankingErrorMatrix& P, int i, double x);

}  // namespace rssinfo
