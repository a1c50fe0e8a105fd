#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "rssinfo/distributions.hpp"
#include "rssinfo/measures.hpp"
#include "rssinfo/ranking_error.hpp"

namespace rssinfo {

struct SimConfig {
  std::int64_t replications = 1'000'000;
  std::uint64_t seed = 20260101;
  int batches = 100;

  // M >= 100 and 2 <= batches <= M.
  void validate() const;
};

struct EstimateResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t replications = 0;
  // Set by mc_kl when the two halves of the run disagree by more than
  // 10 standard errors, or a log-ratio is not finite.
  bool divergent = false;
};

/// Independent stream of open-interval uniforms. Streams with the same
/// (seed, stream) pair produce identical sequences.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  // Uniform on (0, 1), never returning either endpoint.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

// Draws n iid values and returns the i-th smallest.
double sample_order_stat(const Distribution& dist, int n, int i, Rng& rng);

// Draws the true rank r from row i of P, then an r-th order statistic.
double sample_judged(const Distribution& dist, const RankingErrorMatrix& P, int i,
                     Rng& rng);

// One draw from component i of the design.
double sample_component(const Design& design, const Distribution& dist, int i,
                        Rng& rng);

// Plug-in estimate of the Shannon entropy: per component, mean of
// -log(component density) at draws from that component.
EstimateResult mc_entropy(const Design& design, const Distribution& dist,
                          const SimConfig& sim = {});

// Per component, (1/(1-a)) log of the mean of g^{a-1} at draws from g.
EstimateResult mc_renyi(const Design& design, const Distribution& dist,
                        double alpha, const SimConfig& sim = {});

// Mean componentwise log-ratio of the X-side to the Y-side density at
// draws from the X side.
EstimateResult mc_kl(const Design& design_x, const Distribution& f,
                     const Design& design_y, const Distribution& g,
                     const SimConfig& sim = {});

// Vasicek spacing estimator over ascending `samples` with window m:
//   (1/N) sum_i log( N/(2m) (X_(i+m) - X_(i-m)) ), indices clamped.
// Requires N >= 2m + 1; throws std::domain_error on a zero spacing.
double vasicek_entropy(std::span<const double> samples, int window);

}  // namespace rssinfo
