#include "rssinfo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rssinfo/errors.hpp"

namespace rssinfo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-Legendre points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NonFiniteIntegrand(x);
  return y;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};

  const double fc = checked(f, center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }
  const double scale = std::abs(half);
  resk *= half;
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk, err};
}

// Largest error first; ties broken by position so the order is total.
bool worse(const Panel& lhs, const Panel& rhs) {
  if (lhs.error != rhs.error) return lhs.error < rhs.error;
  return lhs.a > rhs.a;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += v[k];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

QuadratureResult adapt(const Integrand& f, double a, double b,
                       const QuadratureConfig& cfg, double extra_error) {
  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  heap.push_back(gauss_kronrod(f, a, b));
  double total = heap.front().value;
  double total_err = heap.front().error;
  int subdivisions = 0;

  const auto tolerance = [&](double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  };

  while (!heap.empty() && total_err + extra_error > tolerance(total) &&
         subdivisions < cfg.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  // Re-sum in position order so the result does not depend on update drift.
  heap.insert(heap.end(), frozen.begin(), frozen.end());
  std::sort(heap.begin(), heap.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  std::vector<double> values;
  std::vector<double> errors;
  values.reserve(heap.size());
  errors.reserve(heap.size());
  for (const Panel& p : heap) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  QuadratureResult out;
  out.value = pairwise_sum(values, 0, values.size());
  out.error_estimate = pairwise_sum(errors, 0, errors.size()) + extra_error;
  out.subdivisions_used = subdivisions;
  out.converged = out.error_estimate <= tolerance(out.value);
  return out;
}

struct Sliver {
  double value;
  double error;
};

// Integral of f over the sliver between `edge` and edge + width (width may
// be negative). f is modelled as C t^p in the distance t from the edge,
// with p fitted from samples at t = w, w/2, w/4; the two fits bound the
// error. Falls back to a rectangle with a generous error when the samples
// do not look like an integrable power law.
Sliver sliver_estimate(const Integrand& f, double edge, double width) {
  const double w = std::abs(width);
  const double f1 = checked(f, edge + width);
  const double rectangle = w * f1;
  const Sliver fallback{rectangle, 2.0 * std::abs(rectangle)};
  if (f1 == 0.0) return {0.0, 0.0};
  double f2 = 0.0;
  double f4 = 0.0;
  try {
    f2 = checked(f, edge + 0.5 * width);
    f4 = checked(f, edge + 0.25 * width);
  } catch (const NonFiniteIntegrand&) {
    return fallback;
  }
  if (!(f1 * f2 > 0.0 && f2 * f4 > 0.0)) return fallback;
  const double p1 = std::log2(f1 / f2);
  const double p2 = std::log2(f2 / f4);
  if (!(p1 > -1.0 && p2 > -1.0)) return fallback;
  const double v1 = rectangle / (p1 + 1.0);
  const double v2 = 0.5 * w * f2 / (p2 + 1.0) * std::exp2(p2 + 1.0);
  return {v1, std::abs(v1 - v2) + 4.0 * kEps * std::abs(v1)};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("quadrature max_subdivisions must be >= 1");
  }
  if (!(endpoint_inset >= 0.0 && endpoint_inset < 0.5)) {
    throw std::invalid_argument("quadrature endpoint_inset must lie in [0, 0.5)");
  }
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  error_estimate += other.error_estimate;
  subdivisions_used += other.subdivisions_used;
  converged = converged && other.converged;
  return *this;
}

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("integrate: limits must be finite");
  }
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = integrate(f, b, a, cfg);
    r.value = -r.value;
    return r;
  }
  if (cfg.endpoint_policy == EndpointPolicy::kOpen || cfg.endpoint_inset == 0.0) {
    return adapt(f, a, b, cfg, 0.0);
  }
  const double sliver = cfg.endpoint_inset * (b - a);
  const Sliver left = sliver_estimate(f, a, sliver);
  const Sliver right = sliver_estimate(f, b, -sliver);
  QuadratureResult r = adapt(f, a + sliver, b - sliver, cfg, left.error + right.error);
  r.value += left.value + right.value;
  r.converged = r.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
  return r;
}

QuadratureResult integrate_half_line(const Integrand& f, double a,
                                     const QuadratureConfig& cfg, double scale) {
  if (!std::isfinite(a)) throw std::invalid_argument("integrate_half_line: a must be finite");
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_half_line: scale must be > 0");
  if (cfg.half_line_map == HalfLineMap::kRational) {
    return integrate(
        [&](double t) {
          const double w = 1.0 - t;
          const double y = f(a + scale * t / w);
          return y == 0.0 ? 0.0 : y * scale / (w * w);
        },
        0.0, 1.0, cfg);
  }
  return integrate(
      [&](double t) {
        const double w = 1.0 - t;
        const double y = f(a - scale * std::log(w));
        return y == 0.0 ? 0.0 : y * scale / w;
      },
      0.0, 1.0, cfg);
}

QuadratureResult integrate_real_line(const Integrand& f, double center,
                                     const QuadratureConfig& cfg, double scale) {
  QuadratureResult right = integrate_half_line(f, center, cfg, scale);
  const QuadratureResult left = integrate_half_line(
      [&](double x) { return f(2.0 * center - x); }, center, cfg, scale);
  right += left;
  return right;
}

QuadratureResult integrate_over(const Integrand& f, const Support& support,
                                const QuadratureConfig& cfg, double center,
                                double scale) {
  switch (support.kind) {
    case SupportKind::kInterval: return integrate(f, support.lower, support.upper, cfg);
    case SupportKind::kHalfLine: return integrate_half_line(f, support.lower, cfg, scale);
    case SupportKind::kRealLine: return integrate_real_line(f, center, cfg, scale);
  }
  throw std::logic_error("unknown support kind");
}

QuadratureResult integrate_over(const Integrand& f, const Distribution& dist,
                                const QuadratureConfig& cfg) {
  return integrate_over(f, dist.support(), cfg, dist.center(), dist.scale());
}

QuadratureResult entropy_integral(const Integrand& density, const Support& support,
                                  const QuadratureConfig& cfg, double center,
                                  double scale) {
  QuadratureResult r = integrate_over(
      [&](double x) {
        const double g = density(x);
        if (g < 0.0) throw std::domain_error("entropy_integral: negative density");
        return g == 0.0 ? 0.0 : -g * std::log(g);
      },
      support, cfg, center, scale);
  return r;
}

QuadratureResult entropy_integral_log(const Integrand& log_density,
                                      const Support& support,
                                      const QuadratureConfig& cfg, double center,
                                      double scale) {
  return integrate_over(
      [&](double x) {
        const double l = log_density(x);
        if (l == kNegInf) return 0.0;
        const double g = std::exp(l);
        return g == 0.0 ? 0.0 : -g * l;
      },
      support, cfg, center, scale);
}

}  // namespace rssinfo
