#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rssinfo/measures.hpp"
#include "rssinfo/mc_oracle.hpp"
#include "rssinfo/quadrature.hpp"

namespace rssinfo {

// A rectangular numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // '.' decimal point, 12 significant digits, '\n' line endings.
  std::string to_csv() const;
  // Array of {column: value} objects.
  std::string to_json() const;
};

// Formats a double with 12 significant digits in the classic locale.
std::string format_number(double v);

// ---------------------------------------------------------------------------
// Input parsing

// "srs:N", "rss:N", "irss:N:<builtin|path>", optionally suffixed "xM" on N
// for M cycles ("rss:3x2"). Builtins: identity, uniform, blend=W, p12=X.
// A bare "irss:N" takes its matrix from `error_matrix_path`.
Design parse_design(std::string_view text,
                    const std::optional<std::string>& error_matrix_path = std::nullopt);
RankingErrorMatrix parse_ranking_matrix(std::string_view text, int n);

// "key = value" lines; '#' starts a comment. Throws ParseError on a line
// without '='.
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> load_config_file(const std::string& path);

// ---------------------------------------------------------------------------
// Tables

// Rows (n, k(n)) for n = 2..n_max from the direct form; each row is
// cross-checked against the recursion (std::logic_error on mismatch).
Table table_k(int n_max);
Table table_dn(int n_max);
Table table_psi(const std::vector<double>& alphas, int n_max);

enum class FigureId { kShannonVsRankingError, kRenyiImperfectVsSrs, kRenyiImperfectVsPerfect };
FigureId parse_figure_id(std::string_view text);

struct FigureOptions {
  MeasureOptions measure;
  double rate = 1.0;
  // Shannon curve: p12 grid; Renyi curves: alpha grid and p11 values.
  std::vector<double> p12_grid;
  std::vector<double> alpha_grid;
  std::vector<double> p11_values = {0.8, 0.9, 0.95, 1.0};
};

// Shannon: (p12, H(RSS*)-H(SRS), H(RSS)-H(SRS), H(RSS)-H(RSS*)).
// Renyi:  (alpha, one column per p11) with H_a(RSS*) - H_a(SRS) or
//         H_a(RSS*) - H_a(RSS); Exponential, n = 2.
Table figure(FigureId id, const FigureOptions& options = {});

// ---------------------------------------------------------------------------
// Renyi ordering scan for alpha > 1

struct ScanGrid {
  std::vector<std::string> families = {"exp:1", "unif", "norm:0,1", "weibull:2,1"};
  std::vector<int> ns = {2, 3, 4, 5, 6, 7, 8};
  std::vector<double> alphas = {1.1, 1.5, 2.0, 3.0, 5.0, 10.0};
  std::vector<std::string> matrices = {"identity", "blend=0.75", "blend=0.5",
                                       "blend=0.25", "uniform"};
  MeasureOptions measure;
  double slack = 1e-9;
  int jobs = 1;

  // Non-empty axes, alpha > 1 (std::domain_error), parseable specs.
  void validate() const;
};

struct ScanRecord {
  std::string family;
  int n = 0;
  double alpha = 0.0;
  std::string matrix;
  MeasureResult rss;
  MeasureResult rss_star;
  MeasureResult srs;
  // H_a(RSS*) - H_a(RSS) and H_a(SRS) - H_a(RSS*); both >= 0 under the
  // ordering.
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  double lower_error = 0.0;
  double upper_error = 0.0;
};

struct ScanViolation {
  std::size_t record = 0;
  std::string inequality;
  double margin = 0.0;
  double error = 0.0;
};

struct ScanReport {
  std::vector<ScanRecord> records;
  std::vector<ScanViolation> violations;
  bool all_converged = true;

  std::string to_csv() const;
  std::string summary() const;
};

ScanReport conjecture_scan(const ScanGrid& grid);

// ---------------------------------------------------------------------------
// Errata report: printed forms vs corrected forms vs independent oracles.

struct ErrataCheck {
  std::string id;
  std::string description;
  double printed = 0.0;
  double corrected = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  // True when the check is one of the four required erratum flags.
  bool core = false;

  bool printed_matches() const;
  bool corrected_matches() const;
};

std::vector<ErrataCheck> errata_checks(const QuadratureConfig& quad = {});
std::string errata_csv(const std::vector<ErrataCheck>& checks);

}  // namespace rssinfo
