#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "rssinfo/closed_form.hpp"
#include "rssinfo/errors.hpp"
#include "rssinfo/measures.hpp"

namespace rssinfo {
namespace {

const double kLog2 = std::log(2.0);

MeasureOptions numeric(Space space = Space::kDefault) {
  MeasureOptions o;
  o.force_numeric = true;
  o.space = space;
  return o;
}

std::vector<DistributionPtr> families() {
  return {std::make_shared<Exponential>(1.0), std::make_shared<Uniform>(),
          std::make_shared<Normal>(0.0, 1.0), std::make_shared<Weibull>(2.0, 1.0)};
}

std::vector<RankingErrorMatrix> matrices(int n) {
  return {RankingErrorMatrix::identity(n), RankingErrorMatrix::blend(n, 0.75),
          RankingErrorMatrix::blend(n, 0.5), RankingErrorMatrix::blend(n, 0.25),
          RankingErrorMatrix::uniform(n)};
}

double slack(const MeasureResult& a, const MeasureResult& b) {
  return a.error_estimate + b.error_estimate + 1e-9;
}

TEST(Design, Construction) {
  EXPECT_EQ(Design::srs(3).spec(), "srs:3");
  EXPECT_EQ(Design::perfect_rss(2).spec(), "rss:2");
  EXPECT_EQ(Design::imperfect_rss(RankingErrorMatrix::uniform(4)).n, 4);
  EXPECT_THROW(Design::srs(0), std::invalid_argument);
  EXPECT_THROW(Design::perfect_rss(2, 0), std::invalid_argument);
  Design broken = Design::perfect_rss(2);
  broken.kind = DesignKind::kImperfectRss;
  EXPECT_THROW(broken.validate(), std::invalid_argument);
}

TEST(Shannon, ExponentialExamples) {
  const Exponential e(1.0);
  const auto srs = shannon(Design::srs(2), e);
  EXPECT_NEAR(srs.value, 2.0, 1e-12);
  EXPECT_EQ(srs.method, Method::kClosedForm);
  EXPECT_NEAR(shannon(Design::perfect_rss(2), e).value, 3.0 - 2.0 * kLog2, 1e-12);
  for (Space s : {Space::kU, Space::kX}) {
    const auto q = shannon(Design::perfect_rss(2), e, numeric(s));
    EXPECT_EQ(q.method, Method::kQuadrature);
    EXPECT_NEAR(q.value, 3.0 - 2.0 * kLog2, 1e-7);
    EXPECT_NEAR(shannon(Design::srs(2), e, numeric(s)).value, 2.0, 1e-7);
  }
  const auto P = RankingErrorMatrix::two_by_two(0.3);
  const double expected = 2.0 - 2.0 * kLog2 + 2.0 * eta(0.7);
  EXPECT_NEAR(shannon(Design::imperfect_rss(P), e).value, expected, 1e-12);
  EXPECT_NEAR(shannon(Design::imperfect_rss(P), e, numeric()).value, expected, 1e-7);
  EXPECT_NEAR(shannon(Design::imperfect_rss(P), e, numeric(Space::kX)).value, expected, 1e-7);
}

TEST(Shannon, OrderingAndDistributionFreeGap) {
  for (const auto& d : families()) {
    for (int n = 2; n <= 8; ++n) {
      const auto srs = shannon(Design::srs(n), *d, numeric());
      const auto rss = shannon(Design::perfect_rss(n), *d, numeric());
      EXPECT_NEAR(srs.value - rss.value, -k_direct(n), 1e-7) << d->spec() << " n=" << n;
      for (const auto& P : matrices(n)) {
        const auto star = shannon(Design::imperfect_rss(P), *d, numeric());
        EXPECT_LE(rss.value, star.value + slack(rss, star)) << d->spec() << " n=" << n;
        EXPECT_LE(star.value, srs.value + slack(star, srs)) << d->spec() << " n=" << n;
      }
    }
  }
}

TEST(Shannon, RandomRankingEqualsSrs) {
  for (const auto& d : families()) {
    const auto star = shannon(Design::imperfect_rss(RankingErrorMatrix::uniform(4)), *d);
    EXPECT_NEAR(star.value, shannon(Design::srs(4), *d).value, 1e-7) << d->spec();
  }
}

TEST(Renyi, ExponentialExamples) {
  const Exponential e(1.0);
  EXPECT_NEAR(renyi(Design::srs(2), e, 2.0).value, 2.0 * kLog2, 1e-12);
  EXPECT_NEAR(renyi(Design::srs(2), e, 2.0, numeric()).value, 2.0 * kLog2, 1e-8);
  EXPECT_NEAR(renyi(Design::perfect_rss(2), e, 2.0).value, std::log(3.0), 1e-12);
  EXPECT_NEAR(renyi(Design::perfect_rss(2), e, 2.0, numeric()).value, std::log(3.0), 1e-8);
  EXPECT_NEAR(renyi(Design::perfect_rss(2), e, 2.0, numeric(Space::kU)).value, std::log(3.0),
              1e-8);
  EXPECT_NEAR(renyi(Design::perfect_rss(1), Uniform(), 2.0).value, 0.0, 1e-12);
  EXPECT_THROW(renyi(Design::srs(2), e, 1.0), std::domain_error);
  EXPECT_THROW(renyi(Design::srs(2), e, -0.5), std::domain_error);
}

TEST(Renyi, BinomialGap) {
  const Exponential e(1.0);
  EXPECT_NEAR(renyi_gap_binomial(e, 2, 2.0).value, std::log(0.75), 1e-8);
  EXPECT_NEAR(renyi_gap_binomial(Normal(0, 1), 1, 2.0).value, 0.0, 1e-12);
  for (const auto& d : families()) {
    for (double a : {1.5, 2.0, 3.0}) {
      for (int n = 2; n <= 6; ++n) {
        const double direct = renyi(Design::perfect_rss(n), *d, a, numeric()).value -
                              renyi(Design::srs(n), *d, a, numeric()).value;
        EXPECT_NEAR(renyi_gap_binomial(*d, n, a).value, direct, 1e-6)
            << d->spec() << " a=" << a << " n=" << n;
      }
    }
  }
  EXPECT_THROW(renyi_gap_binomial(e, 2, 0.5), std::domain_error);
}

TEST(Renyi, OrderingBelowOne) {
  for (const auto& d : families()) {
    for (double a : {0.2, 0.5, 0.8}) {
      for (int n : {2, 4, 6}) {
        const auto srs = renyi(Design::srs(n), *d, a, numeric());
        const auto rss = renyi(Design::perfect_rss(n), *d, a, numeric());
        for (const auto& P : matrices(n)) {
          const auto star = renyi(Design::imperfect_rss(P), *d, a, numeric());
          EXPECT_LE(rss.value, star.value + slack(rss, star)) << d->spec() << a << n;
          EXPECT_LE(star.value, srs.value + slack(star, srs)) << d->spec() << a << n;
        }
      }
    }
  }
}

TEST(Renyi, GapAboveOneRespectsPsi) {
  for (const auto& d : families()) {
    for (double a : {1.5, 2.0, 5.0}) {
      for (int n = 2; n <= 10; n += 2) {
        const auto srs = renyi(Design::srs(n), *d, a, numeric());
        const auto rss = renyi(Design::perfect_rss(n), *d, a, numeric());
        EXPECT_GE(rss.value - srs.value, psi_bound(a, n) - slack(rss, srs)) << d->spec();
      }
    }
  }
}

TEST(Renyi, ContinuityAtOne) {
  for (const auto& d : families()) {
    for (const Design& design :
         {Design::srs(3), Design::perfect_rss(3),
          Design::imperfect_rss(RankingErrorMatrix::blend(3, 0.5))}) {
      const double h = shannon(design, *d).value;
      const double below = renyi(design, *d, 0.999).value;
      const double above = renyi(design, *d, 1.001).value;
      EXPECT_GE(below + 5e-3, h);
      EXPECT_LE(above - 5e-3, h);
      EXPECT_NEAR(below, h, 5e-3);
      EXPECT_NEAR(above, h, 5e-3);
    }
  }
}

TEST(Kl, DistributionFree) {
  EXPECT_NEAR(kl_srs_vs_design(Design::perfect_rss(2), Exponential(1.0)).value,
              2.0 - 2.0 * kLog2, 1e-12);
  for (int n = 1; n <= 8; ++n) {
    const auto u = kl_srs_vs_design(Design::perfect_rss(n), Uniform(), numeric());
    EXPECT_NEAR(u.value, d_n(n), 1e-8) << n;
    for (const auto& d : families()) {
      EXPECT_NEAR(kl_srs_vs_design(Design::perfect_rss(n), *d, numeric()).value, u.value, 2e-8);
      if (d->family() != Family::kWeibull) {
        EXPECT_NEAR(kl_srs_vs_design(Design::perfect_rss(n), *d, numeric(Space::kX)).value,
                    d_n(n), 1e-6)
            << d->spec() << " n=" << n;
      }
    }
  }
  EXPECT_THROW(kl_srs_vs_design(Design::srs(2), Uniform()), std::invalid_argument);
}

TEST(Kl, ImperfectLimits) {
  const Normal z(0.0, 1.0);
  for (int n = 2; n <= 6; ++n) {
    const auto id = kl_srs_vs_design(Design::imperfect_rss(RankingErrorMatrix::identity(n)), z,
                                     numeric());
    EXPECT_NEAR(id.value, d_n(n), 1e-8);
    const auto un = kl_srs_vs_design(Design::imperfect_rss(RankingErrorMatrix::uniform(n)), z,
                                     numeric());
    EXPECT_NEAR(un.value, 0.0, 1e-10);
  }
}

TEST(Kl, PerfectDominatesImperfect) {
  for (int n = 2; n <= 8; ++n) {
    const auto perfect = kl_srs_vs_design(Design::perfect_rss(n), Uniform());
    for (const auto& P : matrices(n)) {
      if (P.is_identity()) continue;
      const auto star = kl_srs_vs_design(Design::imperfect_rss(P), Uniform(), numeric());
      EXPECT_GE(perfect.value + slack(perfect, star), star.value) << n;
    }
  }
}

TEST(Kl, TwoSample) {
  const Exponential e1(1.0);
  const Exponential e2(2.0);
  EXPECT_NEAR(kl_two_sample(Design::srs(2), e1, Design::srs(2), e1).value, 0.0, 1e-10);
  EXPECT_NEAR(kl_two_sample(Design::perfect_rss(3), e1, Design::perfect_rss(3), e1).value, 0.0,
              1e-10);
  EXPECT_NEAR(kl_two_sample(Design::srs(2), e1, Design::perfect_rss(2), e1).value, d_n(2), 1e-8);
  // K(Exp(a), Exp(b)) = log(a/b) + b/a - 1 per observation.
  const double per = std::log(0.5) + 1.0;
  EXPECT_NEAR(kl_two_sample(Design::srs(2), e1, Design::srs(2), e2).value, 2.0 * per, 1e-8);
  EXPECT_THROW(kl_two_sample(Design::srs(2), e1, Design::srs(3), e2), std::invalid_argument);
  EXPECT_THROW(kl_two_sample(Design::srs(2), Uniform(0, 2), Design::srs(2), Uniform()),
               DivergentIntegral);
}

TEST(Kl, SrsAgainstRssDominatesSrsAgainstSrs) {
  const std::vector<std::pair<double, double>> pairs = {{1, 2}, {2, 1}, {1, 3}, {0.5, 1}};
  for (const auto& [l1, l2] : pairs) {
    const Exponential f(l1);
    const Exponential g(l2);
    for (int n = 2; n <= 5; ++n) {
      const auto ss = kl_two_sample(Design::srs(n), f, Design::srs(n), g);
      const auto sr = kl_two_sample(Design::srs(n), f, Design::perfect_rss(n), g);
      EXPECT_LE(ss.value, sr.value + slack(ss, sr)) << l1 << "," << l2 << " n=" << n;
    }
  }
}

TEST(Kl, ReverseDirectionIsMinusK) {
  for (const auto& d : families()) {
    for (int n = 2; n <= 6; ++n) {
      const auto r = kl_two_sample(Design::perfect_rss(n), *d, Design::srs(n), *d);
      EXPECT_NEAR(r.value, -k_direct(n), 1e-7) << d->spec() << " n=" << n;
    }
  }
}

TEST(Kl, SymmetricDivergence) {
  const Exponential e(1.0);
  EXPECT_NEAR(kld_symmetric(Design::srs(2), e, Design::srs(2), e).value, 0.0, 1e-10);
  EXPECT_NEAR(kld_symmetric(Design::srs(2), e, Design::perfect_rss(2), e).value, 1.0, 1e-7);
  EXPECT_NEAR(kld_symmetric(Design::srs(3), e, Design::perfect_rss(3), e).value, 3.0, 2e-3);
  EXPECT_NEAR(kld_symmetric(Design::srs(3), e, Design::perfect_rss(3), e).value, 3.0, 1e-7);
  const Normal z(0.0, 1.0);
  EXPECT_NEAR(kld_symmetric(Design::srs(4), z, Design::perfect_rss(4), z).value, 6.0, 1e-7);
}

TEST(An, Values) {
  const Exponential e1(1.0);
  const Exponential e2(2.0);
  for (const auto& d : families()) {
    EXPECT_NEAR(a_n(*d, *d, 3).value, 0.0, 1e-9) << d->spec();
    EXPECT_NEAR(a_n(*d, *d, 3, {}, AnForm::kDefinition).value, 0.0, 1e-9) << d->spec();
  }
  EXPECT_EQ(a_n(e1, e2, 1).value, 0.0);
  // Exponential pair: n(n-1)(3/2 - 2 log 2).
  EXPECT_NEAR(a_n(e1, e2, 2).value, 2.0 * (1.5 - 2.0 * kLog2), 1e-9);
  for (int n = 2; n <= 5; ++n) {
    EXPECT_NEAR(a_n(e1, e2, n).value, a_n(e1, e2, n, {}, AnForm::kDefinition).value, 1e-7);
  }
}

TEST(An, Decomposition) {
  const std::vector<std::pair<double, double>> pairs = {{1, 1}, {1, 2}, {2, 1}};
  for (const auto& [l1, l2] : pairs) {
    const Exponential f(l1);
    const Exponential g(l2);
    for (int n = 2; n <= 4; ++n) {
      const double lhs = kl_two_sample(Design::perfect_rss(n), f, Design::perfect_rss(n), g).value -
                         kl_two_sample(Design::srs(n), f, Design::srs(n), g).value;
      EXPECT_NEAR(lhs, a_n(f, g, n).value, 1e-6) << l1 << "," << l2 << " n=" << n;
    }
  }
}

TEST(Measures, CycleScaling) {
  const Normal z(0.0, 1.0);
  const auto P = RankingErrorMatrix::blend(3, 0.5);
  const std::vector<std::pair<Design, Design>> designs = {
      {Design::srs(3), Design::srs(3, 3)},
      {Design::perfect_rss(3), Design::perfect_rss(3, 3)},
      {Design::imperfect_rss(P), Design::imperfect_rss(P, 3)}};
  for (const auto& [one, three] : designs) {
    for (bool force : {false, true}) {
      MeasureOptions o;
      o.force_numeric = force;
      EXPECT_EQ(shannon(three, z, o).value, 3.0 * shannon(one, z, o).value);
      EXPECT_EQ(renyi(three, z, 2.0, o).value, 3.0 * renyi(one, z, 2.0, o).value);
      EXPECT_EQ(renyi(three, z, 0.5, o).value, 3.0 * renyi(one, z, 0.5, o).value);
      if (one.is_rss()) {
        EXPECT_EQ(kl_srs_vs_design(three, z, o).value, 3.0 * kl_srs_vs_design(one, z, o).value);
      }
    }
  }
  const Exponential e1(1.0);
  const Exponential e2(2.0);
  EXPECT_EQ(kl_two_sample(Design::perfect_rss(2, 3), e1, Design::srs(2, 3), e2).value,
            3.0 * kl_two_sample(Design::perfect_rss(2), e1, Design::srs(2), e2).value);
}

TEST(Measures, MethodTagsAndDiagnostics) {
  const Normal z(0.0, 1.0);
  const auto closed = shannon(Design::perfect_rss(4), z);
  EXPECT_EQ(closed.method, Method::kClosedForm);
  const auto quad = shannon(Design::perfect_rss(4), z, numeric());
  EXPECT_EQ(quad.method, Method::kQuadrature);
  EXPECT_TRUE(quad.diagnostics.converged);
  EXPECT_GT(quad.diagnostics.integrals, 0);
  EXPECT_NEAR(closed.value, quad.value, 1e-8);
  EXPECT_STREQ(to_string(Method::kMonteCarlo), "monte-carlo");
}

}  // namespace
}  // namespace rssinfo
