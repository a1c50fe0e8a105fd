#pragma once

namespace rssinfo {

// Natural log of Gamma(z) for z > 0.
double log_gamma(double z);

// Digamma psi(z) = d/dz log Gamma(z), z > 0. Shifted upward with
// psi(z) = psi(z + 1) - 1/z until z >= 8, then an asymptotic series.
double digamma(double z);

// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
double log_beta(double a, double b);

// log of the binomial coefficient C(n, k), 0 <= k <= n.
double log_binomial(int n, int k);

// x * log(x) with the convention 0 * log 0 = 0.
double xlogx(double x);

}  // namespace rssinfo
