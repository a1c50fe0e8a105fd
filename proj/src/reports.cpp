#include "rssinfo/reports.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <locale>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "rssinfo/closed_form.hpp"
#include "rssinfo/errors.hpp"
#include "rssinfo/order_stats.hpp"
#include "rssinfo/special_functions.hpp"

namespace rssinfo {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view token, const std::string& context) {
  const std::string t(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid number in " + context, t);
  }
  if (used != t.size()) throw ParseError("invalid number in " + context, t);
  return v;
}

int parse_int(std::string_view token, const std::string& context) {
  const std::string t(token);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid integer in " + context, t);
  }
  if (used != t.size()) throw ParseError("invalid integer in " + context, t);
  return v;
}

std::vector<double> default_p12_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 50; ++k) g.push_back(k / 50.0);
  return g;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 50; ++k) {
    if (k != 10) g.push_back(k / 10.0);
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Table

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << (v == 0.0 ? 0.0 : v);
  return os.str();
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += (c ? "," : "") + columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += (c ? "," : "") + format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Parsing

RankingErrorMatrix parse_ranking_matrix(std::string_view text, int n) {
  const std::string spec = trim(text);
  if (spec == "identity") return RankingErrorMatrix::identity(n);
  if (spec == "uniform") return RankingErrorMatrix::uniform(n);
  if (spec.rfind("blend=", 0) == 0) {
    const double w = parse_double(std::string_view(spec).substr(6), "blend weight");
    try {
      return RankingErrorMatrix::blend(n, w);
    } catch (const std::domain_error& e) {
      throw ParseError(e.what(), spec);
    }
  }
  if (spec.rfind("p12=", 0) == 0) {
    if (n != 2) throw ParseError("p12= matrices need n = 2", spec);
    const double p = parse_double(std::string_view(spec).substr(4), "p12");
    try {
      return RankingErrorMatrix::two_by_two(p);
    } catch (const std::domain_error& e) {
      throw ParseError(e.what(), spec);
    }
  }
  RankingErrorMatrix P = load_ranking_matrix_csv(spec);
  if (P.size() != n) {
    throw ParseError("error matrix dimension does not match n = " + std::to_string(n),
                     spec);
  }
  return P;
}

Design parse_design(std::string_view text,
                    const std::optional<std::string>& error_matrix_path) {
  const std::string whole(text);
  const auto first = text.find(':');
  if (first == std::string_view::npos) throw ParseError("design needs 'kind:N'", whole);
  const std::string kind(text.substr(0, first));
  std::string_view rest = text.substr(first + 1);
  std::string_view size_part = rest;
  std::optional<std::string> matrix;
  if (const auto second = rest.find(':'); second != std::string_view::npos) {
    size_part = rest.substr(0, second);
    matrix = std::string(rest.substr(second + 1));
  }
  int cycles = 1;
  if (const auto x = size_part.find('x'); x != std::string_view::npos) {
    cycles = parse_int(size_part.substr(x + 1), "design cycle count");
    size_part = size_part.substr(0, x);
  }
  const int n = parse_int(size_part, "design set size");
  if (n < 1) throw ParseError("design set size must be >= 1", std::string(size_part));
  if (cycles < 1) throw ParseError("design cycle count must be >= 1", whole);

  if (kind == "srs" || kind == "rss") {
    if (matrix) throw ParseError("only irss designs take a ranking matrix", *matrix);
    return kind == "srs" ? Design::srs(n, cycles) : Design::perfect_rss(n, cycles);
  }
  if (kind == "irss") {
    if (!matrix) {
      if (!error_matrix_path) {
        throw ParseError("irss design needs a matrix (irss:N:<name|file> or --error-matrix)",
                         whole);
      }
      matrix = *error_matrix_path;
    }
    return Design::imperfect_rss(parse_ranking_matrix(*matrix, n), cycles);
  }
  throw ParseError("unknown design kind", kind);
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("config line needs 'key = value'", t);
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ParseError("config line has an empty key", t);
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Tables

Table table_k(int n_max) {
  if (n_max < 2) throw std::invalid_argument("table-k: n_max must be >= 2");
  Table t{{"n", "k"}, {}};
  for (int n = 2; n <= n_max; ++n) {
    const double direct = k_direct(n);
    const double recursive = k_recursive(n);
    if (std::abs(direct - recursive) > 1e-9 * std::max(1.0, std::abs(direct))) {
      throw std::logic_error("k(n) direct and recursive forms disagree at n = " +
                             std::to_string(n));
    }
    t.rows.push_back({double(n), direct});
  }
  return t;
}

Table table_dn(int n_max) {
  if (n_max < 1) throw std::invalid_argument("dn: n_max must be >= 1");
  Table t{{"n", "d_n"}, {}};
  for (int n = 1; n <= n_max; ++n) t.rows.push_back({double(n), d_n(n)});
  return t;
}

Table table_psi(const std::vector<double>& alphas, int n_max) {
  if (n_max < 2) throw std::invalid_argument("psi: n_max must be >= 2");
  Table t{{"alpha", "n", "psi", "lower_bound"}, {}};
  for (double a : alphas) {
    for (int n = 2; n <= n_max; ++n) {
      t.rows.push_back({a, double(n), psi_bound(a, n), n * a / (1.0 - a) * std::log(n)});
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Figures

FigureId parse_figure_id(std::string_view text) {
  if (text == "1") return FigureId::kShannonVsRankingError;
  if (text == "2a") return FigureId::kRenyiImperfectVsSrs;
  if (text == "2b") return FigureId::kRenyiImperfectVsPerfect;
  throw ParseError("unknown figure id (expected 1, 2a or 2b)", std::string(text));
}

Table figure(FigureId id, const FigureOptions& options) {
  const Exponential dist(options.rate);
  const Design srs = Design::srs(2);
  const Design rss = Design::perfect_rss(2);
  const auto& mo = options.measure;

  if (id == FigureId::kShannonVsRankingError) {
    const auto grid = options.p12_grid.empty() ? default_p12_grid() : options.p12_grid;
    const double h_srs = shannon(srs, dist, mo).value;
    const double h_rss = shannon(rss, dist, mo).value;
    Table t{{"p12", "h_rss_star_minus_srs", "h_rss_minus_srs", "h_rss_minus_rss_star"}, {}};
    for (double p : grid) {
      const Design irss = Design::imperfect_rss(RankingErrorMatrix::two_by_two(p));
      const double h_star = shannon(irss, dist, mo).value;
      t.rows.push_back({p, h_star - h_srs, h_rss - h_srs, h_rss - h_star});
    }
    return t;
  }

  const auto grid = options.alpha_grid.empty() ? default_alpha_grid() : options.alpha_grid;
  Table t;
  t.columns.push_back("alpha");
  for (double p11 : options.p11_values) t.columns.push_back("p11_" + format_number(p11));
  for (double a : grid) {
    const double reference = id == FigureId::kRenyiImperfectVsSrs
                                 ? renyi(srs, dist, a, mo).value
                                 : renyi(rss, dist, a, mo).value;
    std::vector<double> row{a};
    for (double p11 : options.p11_values) {
      const Design irss = Design::imperfect_rss(RankingErrorMatrix::two_by_two(1.0 - p11));
      row.push_back(renyi(irss, dist, a, mo).value - reference);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Conjecture scan

void ScanGrid::validate() const {
  if (families.empty() || ns.empty() || alphas.empty() || matrices.empty()) {
    throw std::invalid_argument("scan grid axes must be non-empty");
  }
  for (double a : alphas) {
    if (!(a > 1.0) || !std::isfinite(a)) {
      throw std::domain_error("scan grid: every alpha must be > 1 (0 < alpha < 1 is "
                              "covered by the proven ordering)");
    }
  }
  for (int n : ns) {
    if (n < 1) throw std::invalid_argument("scan grid: n must be >= 1");
  }
  for (const auto& f : families) parse_distribution(f);
  for (const auto& m : matrices) parse_ranking_matrix(m, ns.front());
  if (jobs < 1) throw std::invalid_argument("scan grid: jobs must be >= 1");
}

ScanReport conjecture_scan(const ScanGrid& grid) {
  grid.validate();
  struct Point {
    std::size_t family;
    int n;
    double alpha;
    std::size_t matrix;
  };
  std::vector<Point> points;
  for (std::size_t f = 0; f < grid.families.size(); ++f) {
    for (int n : grid.ns) {
      for (double a : grid.alphas) {
        for (std::size_t m = 0; m < grid.matrices.size(); ++m) points.push_back({f, n, a, m});
      }
    }
  }
  std::vector<DistributionPtr> dists;
  for (const auto& f : grid.families) dists.push_back(parse_distribution(f));

  ScanReport report;
  report.records.resize(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        const Point& p = points[k];
        const Distribution& d = *dists[p.family];
        ScanRecord& r = report.records[k];
        r.family = grid.families[p.family];
        r.n = p.n;
        r.alpha = p.alpha;
        r.matrix = grid.matrices[p.matrix];
        const Design irss =
            Design::imperfect_rss(parse_ranking_matrix(grid.matrices[p.matrix], p.n));
        r.rss = renyi(Design::perfect_rss(p.n), d, p.alpha, grid.measure);
        r.rss_star = renyi(irss, d, p.alpha, grid.measure);
        r.srs = renyi(Design::srs(p.n), d, p.alpha, grid.measure);
        r.lower_margin = r.rss_star.value - r.rss.value;
        r.upper_margin = r.srs.value - r.rss_star.value;
        r.lower_error = r.rss_star.error_estimate + r.rss.error_estimate;
        r.upper_error = r.srs.error_estimate + r.rss_star.error_estimate;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::min<int>(grid.jobs, static_cast<int>(points.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t k = 0; k < report.records.size(); ++k) {
    const ScanRecord& r = report.records[k];
    report.all_converged = report.all_converged && r.rss.diagnostics.converged &&
                           r.rss_star.diagnostics.converged && r.srs.diagnostics.converged;
    if (r.lower_margin < -(r.lower_error + grid.slack)) {
      report.violations.push_back({k, "H_a(RSS) <= H_a(RSS*)", r.lower_margin, r.lower_error});
    }
    if (r.upper_margin < -(r.upper_error + grid.slack)) {
      report.violations.push_back({k, "H_a(RSS*) <= H_a(SRS)", r.upper_margin, r.upper_error});
    }
  }
  return report;
}

std::string ScanReport::to_csv() const {
  std::string out =
      "family,n,alpha,matrix,h_rss,h_rss_star,h_srs,lower_margin,upper_margin,"
      "lower_error,upper_error,violation\n";
  std::vector<bool> flagged(records.size(), false);
  for (const auto& v : violations) flagged[v.record] = true;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const ScanRecord& r = records[k];
    out += '"' + r.family + "\"," + std::to_string(r.n) + ',' + format_number(r.alpha) +
           ',' + r.matrix + ',' + format_number(r.rss.value) + ',' +
           format_number(r.rss_star.value) + ',' + format_number(r.srs.value) + ',' +
           format_number(r.lower_margin) + ',' + format_number(r.upper_margin) + ',' +
           format_number(r.lower_error) + ',' + format_number(r.upper_error) + ',' +
           (flagged[k] ? "1" : "0") + '\n';
  }
  return out;
}

std::string ScanReport::summary() const {
  std::ostringstream os;
  os << "grid points: " << records.size() << "\n";
  os << "violations: " << violations.size() << "\n";
  if (violations.empty()) {
    os << "No violation of H_a(RSS) <= H_a(RSS*) <= H_a(SRS) beyond numerical slack "
          "was found on this grid. This is numerical support for the ordering at "
          "these points, not a proof.\n";
  } else {
    for (const auto& v : violations) {
      const ScanRecord& r = records[v.record];
      os << "  " << v.inequality << " fails at family=" << r.family << " n=" << r.n
         << " alpha=" << format_number(r.alpha) << " matrix=" << r.matrix
         << " margin=" << format_number(v.margin) << " error=" << format_number(v.error)
         << "\n";
    }
  }
  if (!all_converged) os << "warning: some integrals did not reach tolerance\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Errata

bool ErrataCheck::printed_matches() const { return std::abs(printed - oracle) <= tolerance; }
bool ErrataCheck::corrected_matches() const {
  return std::abs(corrected - oracle) <= tolerance;
}

std::vector<ErrataCheck> errata_checks(const QuadratureConfig& quad) {
  std::vector<ErrataCheck> out;
  MeasureOptions numeric;
  numeric.quad = quad;
  numeric.force_numeric = true;
  const Exponential exp1(1.0);

  {
    // eta at a = 0.25 against its defining integral, with the sign that gives
    // eta(0) = 1/2.
    const double a = 0.25;
    const double b = 1.0 - a;
    const auto q = integrate([](double u) { return u * std::log(u); }, a, b, quad);
    const double oracle = -2.0 / (1.0 - 2.0 * a) * q.value;
    const double printed = 0.5 + (b * b * std::log(b) - a * a * std::log(a)) / (1.0 - 2.0 * a);
    out.push_back({"eta_closed_form",
                   "eta(0.25): printed bracket vs sign-corrected defining integral", printed,
                   eta(a), oracle, 1e-9, true});
  }
  {
    // The same erratum seen through the entropy it feeds: H(RSS*), n = 2,
    // p12 = 0.25, Exponential(1).
    const double p12 = 0.25;
    const Design irss = Design::imperfect_rss(RankingErrorMatrix::two_by_two(p12));
    const double oracle = shannon(irss, exp1, numeric).value;
    const auto printed_eta = [](double a) {
      const double b = 1.0 - a;
      return 0.5 + (b * b * std::log(b) - a * a * std::log(a)) / (1.0 - 2.0 * a);
    };
    const double p11 = 1.0 - p12;
    const double corrected = exp_shannon(DesignKind::kImperfectRss, 2, 1.0, &*irss.ranking);
    const double printed = corrected - 2.0 * eta(p11) + 2.0 * printed_eta(p11);
    out.push_back({"eta_in_shannon", "H(RSS*) with p12 = 0.25 via printed vs corrected eta",
                   printed, corrected, oracle, 1e-7, false});
  }
  {
    const double alpha = 2.0;
    const double c = 1.0 / (1.0 - alpha);
    const double log_b = log_gamma(alpha + 1.0) + log_gamma(alpha) - log_gamma(2.0 * alpha + 1.0);
    const double printed = alpha * c * (1.0 - std::log(2.0)) + c * log_b;
    const double corrected = exp_renyi(RenyiComponent::kRssTotal, 2, 1.0, alpha) -
                             exp_renyi(RenyiComponent::kSrsTotal, 2, 1.0, alpha);
    const double oracle = renyi(Design::perfect_rss(2), exp1, alpha, numeric).value -
                          renyi(Design::srs(2), exp1, alpha, numeric).value;
    out.push_back({"renyi_gap_display",
                   "H_2(RSS) - H_2(SRS), Exponential n = 2: combined display vs components",
                   printed, corrected, oracle, 1e-7, false});
  }
  {
    const int n = 3;
    const Design irss = Design::imperfect_rss(RankingErrorMatrix::identity(n));
    const double integral = kl_srs_vs_design(irss, exp1, numeric).value;
    out.push_back({"imperfect_kl_prefactor",
                   "K(SRS, RSS*) at P = identity, n = 3: with vs without the -n prefactor",
                   n * integral, integral, d_n(n), 1e-8, true});
  }
  {
    const int n = 2;
    const double nn1 = n * (n - 1.0);
    const auto q = integrate(
        [&](double u) {
          const double x = exp1.quantile(u);
          return u * exp1.log_cdf(x) + (1.0 - u) * exp1.survival(x);
        },
        0.0, 1.0, quad);
    const double printed = -0.5 * nn1 - nn1 * q.value;
    const double corrected = a_n(exp1, exp1, n, numeric).value;
    out.push_back({"a_n_reduced_form",
                   "A_2(F, F), F = Exponential(1): printed reduced form vs log-corrected",
                   printed, corrected, 0.0, 1e-9, true});
  }
  {
    const double alpha = 2.0;
    double modal = 0.0;
    for (int i = 1; i <= 2; ++i) modal += std::log(beta_order_pdf(2, i, (i - 1) / 1.0));
    out.push_back({"psi_alpha_2", "Psi(2, 2): printed value vs its own definition",
                   2.0 * alpha / (1.0 - alpha), psi_bound(alpha, 2),
                   alpha / (1.0 - alpha) * modal, 1e-12, true});
  }
  {
    // Oracle: sum of H(U_(i)) by quadrature of the Beta entropies.
    const int n = 3;
    double oracle = 0.0;
    for (int i = 1; i <= n; ++i) {
      oracle += entropy_integral([&](double u) { return beta_order_pdf(n, i, u); },
                                 Support{SupportKind::kInterval, 0.0, 1.0}, quad)
                    .value;
    }
    double printed = 0.0;
    for (int j = 1; j < n; ++j) printed += 2.0 * (n - 2.0 * j) * std::log(double(j));
    printed -= n * std::log(double(n));
    for (int i = 1; i <= n; ++i) printed -= 2.0 * (i - 1) * digamma(i);
    printed += n * (n - 1.0) * digamma(n + 1.0);
    out.push_back({"k_direct_factor", "k(3): printed direct form vs corrected vs sum of H(U_(i))",
                   printed, k_direct(n), oracle, 1e-8, false});
    const double printed_rec = k_recursive(2) + 2.0 + log_gamma(2.0) - 3.0 * std::log(3.0);
    out.push_back({"k_recursion", "k(3) from k(2): printed recursion vs corrected",
                   printed_rec, k_recursive(n), oracle, 1e-8, false});
  }
  {
    const double t = 0.8;  // p11
    const RankingErrorMatrix P = RankingErrorMatrix::two_by_two(1.0 - t);
    out.push_back({"judged_b2_constant", "constant term b_2(p11) of the judged density, p11 = 0.8",
                   1.0 / t, P(2, 2), P(2, 2), 1e-12,
                   false});
  }
  {
    // H_a(RSS*) display with p11 = 1 must reduce to the perfect value.
    const double alpha = 2.0;
    const double c = 1.0 / (1.0 - alpha);
    const auto i1 = integrate_half_line(
        [&](double x) { return std::exp(-alpha * x) * std::pow(std::exp(-x), alpha); }, 0.0,
        quad);
    const auto i2 = integrate_half_line(
        [&](double x) { return std::exp(-alpha * x) * std::pow(1.0 - std::exp(-x), alpha); },
        0.0, quad);
    const double tail = c * (std::log(i1.value) + std::log(i2.value));
    out.push_back({"renyi_star_prefactor",
                   "H_2(RSS*) at p11 = 1: printed a/(1-a) log 2 prefactor vs 2a/(1-a)",
                   alpha * c * std::log(2.0) + tail, 2.0 * alpha * c * std::log(2.0) + tail,
                   exp_renyi(RenyiComponent::kRssTotal, 2, 1.0, alpha), 1e-8, false});
  }
  {
    const int n = 2;
    for (const auto& [l1, l2] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}}) {
      const Exponential f(l1);
      const Exponential g(l2);
      const double r = l2 / l1;
      const double printed = n * (n - 1.0) * (r * (0.25 - r / 3.0) - 1.5);
      const double oracle =
          kl_two_sample(Design::perfect_rss(n), f, Design::perfect_rss(n), g, numeric).value -
          kl_two_sample(Design::srs(n), f, Design::srs(n), g, numeric).value;
      out.push_back({"a_n_exp_closed_" + format_number(l1) + "_" + format_number(l2),
                     "A_2 for Exponential(" + format_number(l1) + ") vs Exponential(" +
                         format_number(l2) + "): printed closed form vs reduced form",
                     printed, a_n(f, g, n, numeric).value, oracle, 1e-6, false});
    }
  }
  return out;
}

std::string errata_csv(const std::vector<ErrataCheck>& checks) {
  std::string out =
      "id,printed,corrected,oracle,tolerance,printed_matches,corrected_matches,description\n";
  for (const auto& c : checks) {
    out += c.id + ',' + format_number(c.printed) + ',' + format_number(c.corrected) + ',' +
           format_number(c.oracle) + ',' + format_number(c.tolerance) + ',' +
           (c.printed_matches() ? "pass" : "FAIL") + ',' +
           (c.corrected_matches() ? "pass" : "FAIL") + ",\"" + c.description + "\"\n";
  }
  return out;
}

}  // namespace rssinfo
