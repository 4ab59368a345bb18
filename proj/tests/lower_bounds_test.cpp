// Copyright 2026 The sampamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sampamp/lower_bounds.hpp"

namespace sampamp {
namespace {

TEST(PoissonBinomial, MatchesBruteForce) {
  const std::vector<double> p = {0.1, 0.9, 0.5, 0.33, 0.72, 0.05, 0.6, 0.48};
  std::vector<double> pmf(p.size() + 1, 0.0);
  for (unsigned mask = 0; mask < (1u << p.size()); ++mask) {
    double prob = 1.0;
    int ones = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const bool on = (mask >> j) & 1u;
      prob *= on ? p[j] : 1.0 - p[j];
      ones += on;
    }
    pmf[static_cast<std::size_t>(ones)] += prob;
  }
  double cdf = 0.0;
  for (std::int64_t k = 0; k <= 8; ++k) {
    cdf += pmf[static_cast<std::size_t>(k)];
    EXPECT_NEAR(poisson_binomial_cdf(k, p), cdf, 1e-14);
  }
  EXPECT_EQ(poisson_binomial_cdf(-1, p), 0.0);
}

TEST(VotingGap, SingleCoordinateIsTwoPointBayesRisk) {
  // With one coordinate the vote is the likelihood-ratio test whose risk under
  // a uniform two-point prior is (1 - TV)/2.
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{0.5, 0.75}, {0.1, 0.2}, {0.3, 0.9}}) {
    const VotingGap g = voting_bayes_gap({a}, {b});
    EXPECT_EQ(g.threshold, 0);
    EXPECT_NEAR(g.rb_n_lower, 0.5 * (1.0 - a), 1e-15);
    EXPECT_NEAR(g.rb_nm_upper, 0.5 * (1.0 - b), 1e-15);
    EXPECT_NEAR(g.gap, 0.5 * (b - a), 1e-15);
  }
}

TEST(VotingGap, EqualTvGivesNoGap) {
  EXPECT_EQ(voting_bayes_gap({0.4, 0.4, 0.4}, {0.4, 0.4, 0.4}).gap, 0.0);
}

TEST(VotingGap, WideSeparationAtDimensionHundred) {
  // alpha = 0.5 and beta = 1: half-gap 0.1 per coordinate.
  const VotingGap g = voting_bayes_gap(std::vector<double>(100, 0.4), std::vector<double>(100, 0.6));
  EXPECT_NEAR(g.beta, 1.0, 1e-12);
  EXPECT_GE(g.gap, 0.5);
  const double clt = 2.0 * normal_cdf(1.0 / std::sqrt(1.0 - 0.25)) - 1.0;
  EXPECT_NEAR(g.gap, clt, 0.1);
  EXPECT_TRUE(g.hoeffding_applies);
}

TEST(VotingGap, RejectsBadInput) {
  EXPECT_THROW(voting_bayes_gap({0.6}, {0.5}), Error);
  EXPECT_THROW(voting_bayes_gap({0.0}, {0.5}), Error);
  EXPECT_THROW(voting_bayes_gap({0.2}, {1.0}), Error);
  EXPECT_THROW(voting_bayes_gap({0.2, 0.3}, {0.5}), Error);
}

TEST(TwoPoint, GaussianHitsTargetBand) {
  const ScalarFamily g{ScalarKind::kGaussianUnit, 0.0};
  for (std::int64_t n : {1, 10, 500}) {
    const TwoPoint tp = hellinger_two_point(g, n);
    const double delta = tp.theta_plus - tp.theta_minus;
    // Closed-form inversion of 1 - exp(-delta^2/8) = 3/(20n).
    EXPECT_NEAR(delta, std::sqrt(-8.0 * std::log1p(-3.0 / (20.0 * n))), 1e-9);
    EXPECT_GE(-std::expm1(-delta * delta / 8.0), 1.0 / (10.0 * n));
    EXPECT_LE(-std::expm1(-delta * delta / 8.0), 1.0 / (5.0 * n));
    EXPECT_NE(tp.theta_plus, tp.theta_minus);
  }
}

TEST(TwoPoint, BoundedPoissonizedCoordinateFails) {
  const ScalarFamily pp{ScalarKind::kPoissonPair, 1000.0};
  try {
    hellinger_two_point(pp, 10);
    FAIL() << "expected the two-point condition to fail";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAssumptionFailure);
  }
}

TEST(Certificate, GaussianHundredCoordinatesHasPositiveGap) {
  const ScalarFamily g{ScalarKind::kGaussianUnit, 0.0};
  Rng rng(2026);
  const LowerCertificate c = product_lower_certificate(g, 50, 5, 100, 100000, rng);
  EXPECT_GE(c.n_j, 50);
  EXPECT_LE(c.n_j + c.m, 1000);
  EXPECT_FALSE(c.inconclusive);
  EXPECT_GT(c.gap, 0.0);
  EXPECT_TRUE(c.tv_n_at_least_eps1_low && c.tv_n_at_most_eps1);
  EXPECT_TRUE(c.tv_20n_at_least_eps2 && c.tv_20n_at_most_eps2_high);
  // The confirmed TVs agree with the closed form 2 Phi(sqrt(t) delta / 2) - 1.
  const double delta = c.points.theta_plus - c.points.theta_minus;
  auto exact = [&](std::int64_t t) { return 2.0 * normal_cdf(std::sqrt(static_cast<double>(t)) * delta / 2.0) - 1.0; };
  EXPECT_NEAR(c.tv_nj.estimate, exact(c.n_j), 4.0 * c.tv_nj.std_error);
  EXPECT_NEAR(c.tv_njm.estimate, exact(c.n_j + c.m), 4.0 * c.tv_njm.std_error);
}

TEST(Certificate, ReproducibleUnderFixedSeed) {
  const ScalarFamily g{ScalarKind::kGaussianUnit, 0.0};
  Rng a(5);
  Rng b(5);
  const LowerCertificate x = product_lower_certificate(g, 20, 4, 16, 2000, a);
  const LowerCertificate y = product_lower_certificate(g, 20, 4, 16, 2000, b);
  EXPECT_EQ(x.n_j, y.n_j);
  EXPECT_EQ(x.gap, y.gap);
  EXPECT_EQ(x.tv_nj.estimate, y.tv_nj.estimate);
}

TEST(Certificate, LargeMUsesEndpointPair) {
  const ScalarFamily g{ScalarKind::kGaussianUnit, 0.0};
  Rng rng(6);
  const LowerCertificate c = product_lower_certificate(g, 10, 190, 4, 1000, rng);
  EXPECT_EQ(c.grid, (std::vector<std::int64_t>{10, 200}));
  EXPECT_EQ(c.n_j, 10);
}

TEST(PdCurve, ZeroIsUniformGuess) {
  Rng rng(7);
  const McEstimate e = pd_curve(37, 0.0, 100, rng);
  EXPECT_NEAR(e.estimate, 1.0 / 37.0, 1e-15);
}

TEST(PdCurve, PhaseTransitionAndMonotonicity) {
  const std::int64_t d = 10000;
  const double center = std::sqrt(2.0 * std::log(static_cast<double>(d)));
  std::vector<double> zs;
  for (double z = 0.0; z <= center + 3.0 + 1e-12; z += 0.5) zs.push_back(z);
  zs.push_back(center - 3.0);
  zs.push_back(center + 3.0);
  Rng rng(8);
  const auto est = pd_curve_multi(d, zs, 3000, rng);
  for (std::size_t k = 0; k + 3 < zs.size(); ++k) {
    const double slack = 3.0 * (est[k].std_error + est[k + 1].std_error);
    EXPECT_LE(est[k].estimate, est[k + 1].estimate + slack) << zs[k];
  }
  for (const auto& e : est) {
    EXPECT_GE(e.estimate, 0.0);
    EXPECT_LE(e.estimate, 1.0);
  }
  EXPECT_LE(est[zs.size() - 2].estimate, 0.2);
  EXPECT_GE(est[zs.size() - 1].estimate, 0.8);
}

TEST(SparseFloor, ZeroExtraAndDomain) {
  Rng rng(9);
  EXPECT_EQ(sparse_amplification_floor(2, 64, 40, 0, 1000, rng).gap, 0.0);
  EXPECT_THROW(sparse_amplification_floor(32, 64, 40, 1, 1000, rng), Error);
}

TEST(SparseFloor, FourBlocksShowAGap) {
  const std::int64_t s = 4;
  const std::int64_t d = 1024;
  const std::int64_t n = 40;
  const auto m = static_cast<std::int64_t>(
      std::ceil(n / std::sqrt(s * std::log(static_cast<double>(d) / s))));
  Rng rng(10);
  const SparseFloor f = sparse_amplification_floor(s, d, n, m, 20000, rng);
  EXPECT_EQ(f.block_dim, 256);
  EXPECT_GT(f.gap, 0.0);
  EXPECT_GT(f.z_nm, f.z_n);
}

TEST(Stein, ScalarIdentities) {
  EXPECT_EQ(stein_g(3.5, 0.0), 0.0);
  EXPECT_EQ(stein_h(1.0), 0.0);
  EXPECT_THROW(stein_mean(10, 2, {0.1, -0.1}), Error);
  EXPECT_THROW(stein_mean(3, 4, default_stein_weights(4, 4)), Error);
}

TEST(Stein, MomentsMatchBartlettMonteCarlo) {
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{100, 10}, {200, 20}, {400, 10}}) {
    const auto w = default_stein_weights(n, d);
    Rng rng(static_cast<std::uint64_t>(n * 1000 + d));
    const SteinMc mc = stein_mc(n, d, w, 10000, rng);
    EXPECT_NEAR(mc.mean.estimate, stein_mean(n, d, w), 3.0 * mc.mean.std_error) << n << "," << d;
    EXPECT_NEAR(mc.variance, stein_var(n, d, w), 0.1 * stein_var(n, d, w)) << n << "," << d;
  }
}

TEST(Stein, GGapFloorOnGrid) {
  for (int d : {1, 2, 5, 10, 40})
    for (int n = 2 * d; n <= 400; n += 7)
      for (int m : {1, n / 3 + 1, n}) {
        const double gap = stein_g(n + 1.0 - d, d) - stein_g(n + m + 1.0 - d, d);
        EXPECT_GE(gap, m * static_cast<double>(d) * d / (13.0 * n * n)) << n << " " << d << " " << m;
      }
}

TEST(CovarianceGap, BoundsAtTwoHundredByTwenty) {
  const CovarianceGapReport r = covariance_lower_gap(200, 20, 20);
  EXPECT_LE(r.mean_dev_n, 0.5);
  EXPECT_LE(r.sd_n, 0.4);
  EXPECT_TRUE(r.bounds_hold);
  const CovarianceGapReport z = covariance_lower_gap(200, 20, 0);
  EXPECT_EQ(z.g_gap, 0.0);
  EXPECT_FALSE(z.separated);
  EXPECT_THROW(covariance_lower_gap(30, 20, 1), Error);
}

}  // namespace
}  // namespace sampamp
