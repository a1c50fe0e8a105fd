#include "rssinfo/ranking_error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rssinfo/errors.hpp"

namespace rssinfo {

namespace {

void require_size(int n) {
  if (n < 1) throw std::invalid_argument("ranking matrix: n must be >= 1");
}

void require_unit(double w, const char* what) {
  if (!(w >= 0.0 && w <= 1.0)) throw std::domain_error(what);
}

void sinkhorn(std::vector<double>& a, int n) {
  for (int iter = 0; iter < 1000; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int r = 0; r < n; ++r) s += a[i * n + r];
      if (s > 0.0) {
        for (int r = 0; r < n; ++r) a[i * n + r] /= s;
      }
    }
    for (int r = 0; r < n; ++r) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += a[i * n + r];
      worst = std::max(worst, std::abs(s - 1.0));
      if (s > 0.0) {
        for (int i = 0; i < n; ++i) a[i * n + r] /= s;
      }
    }
    if (worst < 1e-15) break;
  }
}

}  // namespace

RankingErrorMatrix RankingErrorMatrix::identity(int n) {
  require_size(n);
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return {n, std::move(e)};
}

RankingErrorMatrix RankingErrorMatrix::uniform(int n) {
  require_size(n);
  return {n, std::vector<double>(static_cast<std::size_t>(n * n), 1.0 / n)};
}

RankingErrorMatrix RankingErrorMatrix::two_by_two(double p12) {
  require_unit(p12, "two_by_two: p12 must lie in [0, 1]");
  return {2, {1.0 - p12, p12, p12, 1.0 - p12}};
}

RankingErrorMatrix RankingErrorMatrix::blend(int n, double w) {
  require_size(n);
  require_unit(w, "blend: weight must lie in [0, 1]");
  if (w == 1.0) return identity(n);
  if (w == 0.0) return uniform(n);
  std::vector<double> e(static_cast<std::size_t>(n * n), (1.0 - w) / n);
  for (int i = 0; i < n; ++i) e[i * n + i] += w;
  return {n, std::move(e)};
}

RankingErrorMatrix RankingErrorMatrix::validate(
    const std::vector<std::vector<double>>& raw, const ValidateOptions& options) {
  using Kind = RankingMatrixError::Kind;
  const int n = static_cast<int>(raw.size());
  if (n == 0) throw RankingMatrixError(Kind::kEmpty, 0, 0, "ranking matrix is empty");
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != n) {
      throw RankingMatrixError(Kind::kNotSquare, i + 1, 0,
                               "ranking matrix is not square (row " +
                                   std::to_string(i + 1) + ")");
    }
    for (int r = 0; r < n; ++r) {
      const double v = raw[i][r];
      if (!std::isfinite(v)) {
        throw RankingMatrixError(Kind::kNonFinite, i + 1, r + 1,
                                 "ranking matrix entry is not finite");
      }
      if (v < 0.0) {
        throw RankingMatrixError(
            Kind::kNegativeEntry, i + 1, r + 1,
            "negative ranking matrix entry at (" + std::to_string(i + 1) + ", " +
                std::to_string(r + 1) + ")");
      }
      e.push_back(v);
    }
  }
  if (options.renormalize) sinkhorn(e, n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += e[i * n + r];
    if (std::abs(s - 1.0) > options.tolerance) {
      throw RankingMatrixError(Kind::kRowSum, i + 1, 0,
                               "row " + std::to_string(i + 1) + " sums to " +
                                   std::to_string(s) + ", expected 1");
    }
  }
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += e[i * n + r];
    if (std::abs(s - 1.0) > options.tolerance) {
      throw RankingMatrixError(Kind::kColSum, 0, r + 1,
                               "column " + std::to_string(r + 1) + " sums to " +
                                   std::to_string(s) + ", expected 1");
    }
  }
  return {n, std::move(e)};
}

bool RankingErrorMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i) {
    for (int r = 0; r < n_; ++r) {
      if (entries_[i * n_ + r] != (i == r ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

std::vector<std::vector<double>> RankingErrorMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    rows[i].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
  }
  return rows;
}

RankingErrorMatrix load_ranking_matrix_csv(const std::string& path,
                                           const ValidateOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open error-matrix file", path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ParseError("invalid probability in " + path, cell);
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw ParseError("invalid probability in " + path, cell);
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return RankingErrorMatrix::validate(rows, options);
}

}  // namespace rssinfo
