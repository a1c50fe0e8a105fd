#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rssinfo {

class RankingMatrixError : public std::invalid_argument {
 public:
  enum class Kind { kEmpty, kNotSquare, kNegativeEntry, kNonFinite, kRowSum, kColSum };

  RankingMatrixError(Kind kind, int row, int col, const std::string& what)
      : std::invalid_argument(what), kind_(kind), row_(row), col_(col) {}

  Kind kind() const noexcept { return kind_; }
  // 1-based; 0 when not applicable.
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  Kind kind_;
  int row_;
  int col_;
};

struct ValidateOptions {
  double tolerance = 1e-12;
  // Sinkhorn-balance the matrix before checking sums.
  bool renormalize = false;
};

/// Doubly stochastic n x n matrix of misranking probabilities.
///
/// Entry (i, r) is the probability that the unit judged to have rank i is
/// in fact the r-th order statistic: rows are judged ranks, columns true
/// ranks. Indices are 1-based, like ranks.
class RankingErrorMatrix {
 public:
  static RankingErrorMatrix identity(int n);
  static RankingErrorMatrix uniform(int n);
  static RankingErrorMatrix two_by_two(double p12);
  // w * identity(n) + (1 - w) * uniform(n).
  static RankingErrorMatrix blend(int n, double w);
  static RankingErrorMatrix validate(const std::vector<std::vector<double>>& raw,
                                     const ValidateOptions& options = {});

  int size() const noexcept { return n_; }
  double operator()(int judged, int true_rank) const {
    return entries_[static_cast<std::size_t>((judged - 1) * n_ + (true_rank - 1))];
  }
  std::span<const double> row(int judged) const {
    return {entries_.data() + static_cast<std::size_t>((judged - 1) * n_),
            static_cast<std::size_t>(n_)};
  }
  bool is_identity() const;
  std::vector<std::vector<double>> to_rows() const;

 private:
  RankingErrorMatrix(int n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {}

  int n_;
  std::vector<double> entries_;
};

// n rows of n comma-separated probabilities, no header.
RankingErrorMatrix load_ranking_matrix_csv(const std::string& path,
                                           const ValidateOptions& options = {});

}  // namespace rssinfo
