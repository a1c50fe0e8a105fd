#pragma once

#include <optional>

#include "rssinfo/distributions.hpp"
#include "rssinfo/ranking_error.hpp"

namespace rssinfo {

/// Entropy of the i-th of n uniform order statistics (a Beta(i, n-i+1) law):
///   log B(i, n-i+1) - (i-1)[psi(i) - psi(n+1)] - (n-i)[psi(n-i+1) - psi(n+1)].
double h_uniform_order(int n, int i);

/// k(n) = sum_i H(U_(i)), the distribution-free Shannon gap
/// H(RSS) - H(SRS). Always <= 0, with k(1) = 0.
///
/// Direct form:
///   sum_{j<n} (n - 2j) log j - n log n - 2 sum_i (i-1) psi(i) + n(n-1) psi(n+1)
double k_direct(int n);

/// k(n) via k(n+1) = k(n) + n + log Gamma(n+1) - (n+1) log(n+1), k(1) = 0.
double k_recursive(int n);

/// K(SRS, RSS) = -sum_i log(i C(n, i)) + n(n-1); distribution-free,
/// nondecreasing, d_1 = 0.
double d_n(int n);

/// Lower bound on the Renyi gap H_a(RSS) - H_a(SRS) for alpha > 1, n >= 2,
/// built from the Beta(i, n-i+1) modal densities (0^0 = 1).
/// Lies in [n a/(1-a) log n, 0).
double psi_bound(double alpha, int n);

/// eta(a) = -(2 / (1 - 2a)) * integral_a^{1-a} u log u du
///        = 1/2 + [a^2 log a - (1-a)^2 log(1-a)] / (1 - 2a),
/// with eta(1/2) = log 2 and eta(a) = eta(1 - a).
double eta(double a);

enum class DesignKind { kSrs, kPerfectRss, kImperfectRss };

/// Shannon entropy of an n = 2 sample from Exponential(rate). The imperfect
/// case needs the 2 x 2 ranking matrix. Throws UnsupportedClosedForm for
/// n != 2.
double exp_shannon(DesignKind kind, int n, double rate,
                   const RankingErrorMatrix* P = nullptr);

enum class RenyiComponent { kSrsTotal, kFirstOrder, kSecondOrder, kRssTotal };

/// Renyi entropies for an n = 2 sample from Exponential(rate), alpha > 0,
/// alpha != 1.
double exp_renyi(RenyiComponent component, int n, double rate, double alpha);

/// Single-observation Shannon entropy, when the family has one.
std::optional<double> family_entropy(const Distribution& dist);

/// Single-observation Renyi entropy, when the family has one.
std::optional<double> family_renyi(const Distribution& dist, double alpha);

}  // namespace rssinfo
