#include "rssinfo/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rssinfo/order_stats.hpp"

namespace rssinfo {

namespace {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  bool halves_disagree = false;
  bool finite = true;
};

// Batch-means estimate of E[value()] from sim.replications draws.
template <typename Draw>
MeanEstimate batch_mean(const SimConfig& sim, Draw&& draw) {
  const std::int64_t m = sim.replications;
  const int b = sim.batches;
  std::vector<double> means(static_cast<std::size_t>(b));
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(b));
  double total = 0.0;
  bool finite = true;
  for (int k = 0; k < b; ++k) {
    const std::int64_t size = m / b + (k < m % b ? 1 : 0);
    double s = 0.0;
    for (std::int64_t r = 0; r < size; ++r) s += draw();
    finite = finite && std::isfinite(s);
    means[k] = s / static_cast<double>(size);
    sizes[k] = size;
    total += s;
  }
  MeanEstimate out;
  out.finite = finite;
  out.mean = total / static_cast<double>(m);
  if (!finite) return out;
  double ss = 0.0;
  for (int k = 0; k < b; ++k) ss += (means[k] - out.mean) * (means[k] - out.mean);
  out.std_error = std::sqrt(ss / (b - 1.0) / b);

  double first = 0.0;
  double second = 0.0;
  std::int64_t n_first = 0;
  std::int64_t n_second = 0;
  for (int k = 0; k < b; ++k) {
    if (k < b / 2) {
      first += means[k] * sizes[k];
      n_first += sizes[k];
    } else {
      second += means[k] * sizes[k];
      n_second += sizes[k];
    }
  }
  const double gap = std::abs(first / n_first - second / n_second);
  out.halves_disagree = gap > 10.0 * out.std_error && gap > 1e-300;
  return out;
}

int components_of(const Design& design) { return design.n; }

EstimateResult finish(double estimate, double variance, const SimConfig& sim,
                      int cycles) {
  EstimateResult r;
  r.estimate = cycles * estimate;
  r.std_error = cycles * std::sqrt(variance);
  r.replications = sim.replications;
  return r;
}

}  // namespace

void SimConfig::validate() const {
  if (replications < 100) throw std::invalid_argument("simulation needs >= 100 replications");
  if (batches < 2 || batches > replications) {
    throw std::invalid_argument("simulation batches must lie in [2, replications]");
  }
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x52535331u};
  engine_.seed(seq);
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_order_stat(const Distribution& dist, int n, int i, Rng& rng) {
  if (n < 1 || i < 1 || i > n) {
    throw std::invalid_argument("sample_order_stat: require 1 <= i <= n");
  }
  if (n == 1) return dist.quantile(rng.uniform());
  thread_local std::vector<double> draws;
  draws.resize(static_cast<std::size_t>(n));
  for (double& x : draws) x = dist.quantile(rng.uniform());
  std::nth_element(draws.begin(), draws.begin() + (i - 1), draws.end());
  return draws[static_cast<std::size_t>(i - 1)];
}

double sample_judged(const Distribution& dist, const RankingErrorMatrix& P, int i,
                     Rng& rng) {
  const int n = P.size();
  if (i < 1 || i > n) throw std::invalid_argument("sample_judged: rank out of range");
  const auto row = P.row(i);
  const double u = rng.uniform();
  double cumulative = 0.0;
  int rank = n;
  for (int r = 0; r < n; ++r) {
    cumulative += row[r];
    if (u < cumulative) {
      rank = r + 1;
      break;
    }
  }
  // Guard against rounding in the cumulative sum landing on a zero entry.
  while (row[rank - 1] == 0.0 && rank > 1) --rank;
  return sample_order_stat(dist, n, rank, rng);
}

double sample_component(const Design& design, const Distribution& dist, int i,
                        Rng& rng) {
  switch (design.kind) {
    case DesignKind::kSrs: return dist.quantile(rng.uniform());
    case DesignKind::kPerfectRss: return sample_order_stat(dist, design.n, i, rng);
    case DesignKind::kImperfectRss: return sample_judged(dist, *design.ranking, i, rng);
  }
  throw std::logic_error("unknown design kind");
}

EstimateResult mc_entropy(const Design& design, const Distribution& dist,
                          const SimConfig& sim) {
  design.validate();
  sim.validate();
  double estimate = 0.0;
  double variance = 0.0;
  for (int i = 1; i <= components_of(design); ++i) {
    Rng rng(sim.seed, static_cast<std::uint64_t>(i));
    const auto m = batch_mean(sim, [&] {
      const double x = sample_component(design, dist, i, rng);
      return -component_log_pdf(design, dist, i, x);
    });
    estimate += m.mean;
    variance += m.std_error * m.std_error;
  }
  return finish(estimate, variance, sim, design.cycles);
}

EstimateResult mc_renyi(const Design& design, const Distribution& dist,
                        double alpha, const SimConfig& sim) {
  design.validate();
  sim.validate();
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::domain_error("Renyi order must satisfy alpha > 0, alpha != 1");
  }
  const double c = 1.0 / (1.0 - alpha);
  double estimate = 0.0;
  double variance = 0.0;
  for (int i = 1; i <= components_of(design); ++i) {
    Rng rng(sim.seed, static_cast<std::uint64_t>(i));
    const auto m = batch_mean(sim, [&] {
      const double x = sample_component(design, dist, i, rng);
      return std::exp((alpha - 1.0) * component_log_pdf(design, dist, i, x));
    });
    estimate += c * std::log(m.mean);
    const double se = std::abs(c) * m.std_error / m.mean;
    variance += se * se;
  }
  return finish(estimate, variance, sim, design.cycles);
}

EstimateResult mc_kl(const Design& design_x, const Distribution& f,
                     const Design& design_y, const Distribution& g,
                     const SimConfig& sim) {
  design_x.validate();
  design_y.validate();
  sim.validate();
  if (design_x.n != design_y.n || design_x.cycles != design_y.cycles) {
    throw std::invalid_argument("mc_kl: designs must share n and cycle count");
  }
  double estimate = 0.0;
  double variance = 0.0;
  bool divergent = false;
  for (int i = 1; i <= components_of(design_x); ++i) {
    Rng rng(sim.seed, static_cast<std::uint64_t>(i));
    const auto m = batch_mean(sim, [&] {
      const double x = sample_component(design_x, f, i, rng);
      return component_log_pdf(design_x, f, i, x) - component_log_pdf(design_y, g, i, x);
    });
    divergent = divergent || !m.finite || m.halves_disagree;
    estimate += m.mean;
    variance += m.std_error * m.std_error;
  }
  EstimateResult r = finish(estimate, variance, sim, design_x.cycles);
  r.divergent = divergent;
  return r;
}

double vasicek_entropy(std::span<const double> samples, int window) {
  const auto n = static_cast<std::int64_t>(samples.size());
  if (window < 1) throw std::invalid_argument("vasicek_entropy: window must be >= 1");
  if (n < 2 * std::int64_t{window} + 1) {
    throw std::invalid_argument("vasicek_entropy: need N >= 2 * window + 1");
  }
  if (!std::is_sorted(samples.begin(), samples.end())) {
    throw std::invalid_argument("vasicek_entropy: samples must be sorted ascending");
  }
  if (samples.front() == samples.back()) {
    throw std::domain_error("vasicek_entropy: degenerate sample (all values equal)");
  }
  const double scale = static_cast<double>(n) / (2.0 * window);
  double s = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double hi = samples[static_cast<std::size_t>(std::min(i + window, n - 1))];
    const double lo = samples[static_cast<std::size_t>(std::max<std::int64_t>(i - window, 0))];
    const double spacing = hi - lo;
    if (!(spacing > 0.0)) {
      throw std::domain_error("vasicek_entropy: zero spacing (tied sample values)");
    }
    s += std::log(scale * spacing);
  }
  return s / static_cast<double>(n);
}

}  // namespace rssinfo
