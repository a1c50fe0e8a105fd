#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "rssinfo/ranking_error.hpp"

namespace rssinfo {
namespace {

using Rows = std::vector<std::vector<double>>;

TEST(RankingError, Identity) {
  EXPECT_EQ(RankingErrorMatrix::identity(2).to_rows(), (Rows{{1, 0}, {0, 1}}));
  EXPECT_EQ(RankingErrorMatrix::identity(1).to_rows(), (Rows{{1}}));
  EXPECT_TRUE(RankingErrorMatrix::identity(5).is_identity());
  EXPECT_THROW(RankingErrorMatrix::identity(0), std::invalid_argument);
}

TEST(RankingError, Uniform) {
  EXPECT_EQ(RankingErrorMatrix::uniform(2).to_rows(), (Rows{{0.5, 0.5}, {0.5, 0.5}}));
  const auto P = RankingErrorMatrix::uniform(4);
  for (int i = 1; i <= 4; ++i)
    for (int r = 1; r <= 4; ++r) EXPECT_DOUBLE_EQ(P(i, r), 0.25);
  EXPECT_FALSE(P.is_identity());
}

TEST(RankingError, TwoByTwo) {
  EXPECT_EQ(RankingErrorMatrix::two_by_two(0.0).to_rows(),
            RankingErrorMatrix::identity(2).to_rows());
  EXPECT_EQ(RankingErrorMatrix::two_by_two(0.5).to_rows(),
            RankingErrorMatrix::uniform(2).to_rows());
  const auto P = RankingErrorMatrix::two_by_two(0.2);
  EXPECT_DOUBLE_EQ(P(1, 1), 0.8);
  EXPECT_DOUBLE_EQ(P(1, 2), 0.2);
  EXPECT_DOUBLE_EQ(P(2, 1), 0.2);
  EXPECT_DOUBLE_EQ(P(2, 2), 0.8);
  EXPECT_THROW(RankingErrorMatrix::two_by_two(1.2), std::domain_error);
  EXPECT_THROW(RankingErrorMatrix::two_by_two(-0.1), std::domain_error);
}

TEST(RankingError, Blend) {
  EXPECT_EQ(RankingErrorMatrix::blend(3, 1.0).to_rows(),
            RankingErrorMatrix::identity(3).to_rows());
  EXPECT_EQ(RankingErrorMatrix::blend(3, 0.0).to_rows(),
            RankingErrorMatrix::uniform(3).to_rows());
  const auto P = RankingErrorMatrix::blend(2, 0.6);
  EXPECT_NEAR(P(1, 1), 0.8, 1e-15);
  EXPECT_NEAR(P(1, 2), 0.2, 1e-15);
  // Continuity in w.
  const auto a = RankingErrorMatrix::blend(4, 0.5);
  const auto b = RankingErrorMatrix::blend(4, 0.5 + 1e-9);
  for (int i = 1; i <= 4; ++i)
    for (int r = 1; r <= 4; ++r) EXPECT_NEAR(a(i, r), b(i, r), 1e-9);
}

TEST(RankingError, ConstructorsPassValidation) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& P : {RankingErrorMatrix::identity(n), RankingErrorMatrix::uniform(n),
                          RankingErrorMatrix::blend(n, 0.3)}) {
      EXPECT_NO_THROW(RankingErrorMatrix::validate(P.to_rows()));
    }
  }
}

TEST(RankingError, ValidateAcceptsAndRejects) {
  EXPECT_NO_THROW(RankingErrorMatrix::validate({{0.9, 0.1}, {0.1, 0.9}}));
  EXPECT_NO_THROW(RankingErrorMatrix::validate({{1.0}}));
  try {
    RankingErrorMatrix::validate({{0.9, 0.2}, {0.1, 0.8}});
    FAIL();
  } catch (const RankingMatrixError& e) {
    EXPECT_TRUE(e.kind() == RankingMatrixError::Kind::kRowSum ||
                e.kind() == RankingMatrixError::Kind::kColSum);
  }
  try {
    RankingErrorMatrix::validate({{1.1, -0.1}, {-0.1, 1.1}});
    FAIL();
  } catch (const RankingMatrixError& e) {
    EXPECT_EQ(e.kind(), RankingMatrixError::Kind::kNegativeEntry);
    EXPECT_EQ(e.row(), 1);
    EXPECT_EQ(e.col(), 2);
  }
  try {
    RankingErrorMatrix::validate({{0.5, 0.5}, {0.5, 0.5, 0.0}});
    FAIL();
  } catch (const RankingMatrixError& e) {
    EXPECT_EQ(e.kind(), RankingMatrixError::Kind::kNotSquare);
  }
  EXPECT_THROW(RankingErrorMatrix::validate({}), RankingMatrixError);
  // Row sums fine, columns off.
  try {
    RankingErrorMatrix::validate({{0.7, 0.3}, {0.7, 0.3}});
    FAIL();
  } catch (const RankingMatrixError& e) {
    EXPECT_EQ(e.kind(), RankingMatrixError::Kind::kColSum);
    EXPECT_EQ(e.col(), 1);
  }
}

TEST(RankingError, ToleranceAndRenormalization) {
  const Rows noisy{{0.9 + 1e-13, 0.1}, {0.1, 0.9 - 1e-13}};
  EXPECT_NO_THROW(RankingErrorMatrix::validate(noisy));
  const Rows rough{{0.901, 0.1}, {0.1, 0.9}};
  EXPECT_THROW(RankingErrorMatrix::validate(rough), RankingMatrixError);
  ValidateOptions opts;
  opts.renormalize = true;
  const auto P = RankingErrorMatrix::validate(rough, opts);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_NEAR(P(i, 1) + P(i, 2), 1.0, 1e-12);
    EXPECT_NEAR(P(1, i) + P(2, i), 1.0, 1e-12);
  }
}

TEST(RankingError, LoadCsv) {
  const std::string path = ::testing::TempDir() + "rssinfo_matrix.csv";
  {
    std::ofstream f(path);
    f << "0.7,0.2,0.1\n0.2,0.6,0.2\n0.1,0.2,0.7\n";
  }
  const auto P = load_ranking_matrix_csv(path);
  EXPECT_EQ(P.size(), 3);
  EXPECT_DOUBLE_EQ(P(2, 2), 0.6);
  std::remove(path.c_str());
  EXPECT_THROW(load_ranking_matrix_csv(path), std::exception);
}

}  // namespace
}  // namespace rssinfo
