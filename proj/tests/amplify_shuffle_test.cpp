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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "sampamp/amplify_shuffle.hpp"
#include "sampamp/mc.hpp"

namespace sampamp {
namespace {

Dataset symbols(int k, std::vector<int> s) {
  Dataset x;
  x.family.kind = FamilyKind::kDiscrete;
  x.family.dim = k;
  x.symbols = std::move(s);
  return x;
}

Dataset gaussian_rows(int d, int n, std::uint64_t seed) {
  FamilySpec f;
  f.dim = d;
  Rng rng(seed);
  return sample(f, default_param(f), static_cast<std::size_t>(n), rng);
}

// Law of the whole-vector shuffle output (n=4, m=1, empirical learner) on
// {0,1}^5 under P = (p0, 1-p0), by brute force over inputs, fake and order.
std::map<std::array<int, 5>, double> enumerate_shuffle_law(double p0) {
  const double p[2] = {p0, 1.0 - p0};
  std::map<std::array<int, 5>, double> law;
  std::array<int, 3> order = {0, 1, 2};
  for (int code = 0; code < 16; ++code) {
    const int x[4] = {code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1};
    const double px = p[x[0]] * p[x[1]] * p[x[2]] * p[x[3]];
    for (int fake_from : {0, 1}) {
      const int pool[3] = {x[2], x[3], x[fake_from]};
      std::sort(order.begin(), order.end());
      do {
        law[{x[0], x[1], pool[order[0]], pool[order[1]], pool[order[2]]}] += px * 0.5 / 6.0;
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  return law;
}

TEST(ShuffleGeneral, ExhaustiveTvBelowBound) {
  for (double p0 : {0.5, 0.3, 0.1}) {
    const auto law = enumerate_shuffle_law(p0);
    double tv = 0.0;
    for (int code = 0; code < 32; ++code) {
      std::array<int, 5> y;
      double target = 1.0;
      for (int i = 0; i < 5; ++i) {
        y[i] = (code >> i) & 1;
        target *= y[i] == 0 ? p0 : 1.0 - p0;
      }
      const auto it = law.find(y);
      tv += 0.5 * std::fabs((it == law.end() ? 0.0 : it->second) - target);
    }
    Rng rng(1);
    const auto out = shuffle_amplify_general(symbols(2, {1, 2, 1, 2}), empirical_discrete(2), 1, rng);
    EXPECT_NEAR(out.bound.value, std::sqrt(1.0 / 4.0 * 1.0 / 2.0), 1e-15);
    EXPECT_LE(tv, out.bound.value) << p0;
  }
}

TEST(ShuffleGeneral, ConditionalChi2WithinShuffleBound) {
  // For each first half the realized plug-in Q is fixed; the pool law is the
  // uniform mixture over the fake's position.
  for (double p0 : {0.5, 0.2}) {
    const double p[2] = {p0, 1.0 - p0};
    for (int first = 0; first < 4; ++first) {
      const double q[2] = {0.5 * ((first & 1) == 0) + 0.5 * ((first & 2) == 0),
                           0.5 * ((first & 1) != 0) + 0.5 * ((first & 2) != 0)};
      const double chi2_q = q[0] * q[0] / p[0] + q[1] * q[1] / p[1] - 1.0;
      double chi2_mix = -1.0;
      for (int code = 0; code < 8; ++code) {
        const int y[3] = {code & 1, (code >> 1) & 1, (code >> 2) & 1};
        const double base = p[y[0]] * p[y[1]] * p[y[2]];
        double mix = 0.0;
        for (int pos = 0; pos < 3; ++pos) mix += base / p[y[pos]] * q[y[pos]] / 3.0;
        chi2_mix += mix * mix / base;
      }
      EXPECT_LE(chi2_mix, shuffle_chi2_bound(chi2_q, 2.0, 1.0) + 1e-12);
    }
  }
}

TEST(ShuffleGeneral, ImplementationMatchesEnumeratedKernel) {
  // Fixed input 1,2 | 2,1: the tail is a uniform order of {2, 1, z}, z uniform on {1, 2}.
  const Dataset x = symbols(2, {1, 2, 2, 1});
  std::map<std::array<int, 3>, double> exact;
  std::array<int, 3> order = {0, 1, 2};
  for (int z : {1, 2}) {
    const int pool[3] = {2, 1, z};
    std::sort(order.begin(), order.end());
    do {
      exact[{pool[order[0]], pool[order[1]], pool[order[2]]}] += 0.5 / 6.0;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  std::map<std::array<int, 3>, int> seen;
  Rng rng(7);
  const int reps = 60000;
  for (int r = 0; r < reps; ++r) {
    const auto out = shuffle_amplify_general(x, empirical_discrete(2), 1, rng);
    ASSERT_EQ(out.samples.symbols.size(), 5u);
    ASSERT_EQ(out.samples.symbols[0], 1);
    ASSERT_EQ(out.samples.symbols[1], 2);
    ++seen[{out.samples.symbols[2], out.samples.symbols[3], out.samples.symbols[4]}];
  }
  for (const auto& [tail, count] : seen) ASSERT_TRUE(exact.count(tail)) << "impossible tail";
  for (const auto& [tail, prob] : exact) {
    const double freq = static_cast<double>(seen[tail]) / reps;
    EXPECT_NEAR(freq, prob, 5.0 * std::sqrt(prob * (1.0 - prob) / reps));
  }
}

TEST(ShuffleGeneral, RowsAreConserved) {
  const Dataset x = gaussian_rows(3, 10, 8);
  Rng rng(9);
  const auto out = shuffle_amplify_general(x, gaussian_mean_plugin(), 4, rng);
  ASSERT_EQ(out.samples.values.rows(), 14);
  EXPECT_TRUE(out.samples.values.topRows(5) == x.values.topRows(5));
  // Every genuine second-half row appears exactly once in the pool.
  for (Eigen::Index i = 5; i < 10; ++i) {
    int hits = 0;
    for (Eigen::Index j = 5; j < 14; ++j) hits += out.samples.values.row(j) == x.values.row(i);
    EXPECT_EQ(hits, 1);
  }
}

TEST(ShuffleProduct, ColumnMultisetsAreConserved) {
  const Dataset x = gaussian_rows(4, 12, 10);
  Rng rng(11);
  const std::vector<Learner> learners(4, gaussian_mean_plugin());
  const auto out = shuffle_amplify_product(x, learners, 5, rng);
  ASSERT_EQ(out.samples.values.rows(), 17);
  for (Eigen::Index j = 0; j < 4; ++j) {
    EXPECT_TRUE(out.samples.values.col(j).head(6) == x.values.col(j).head(6));
    std::vector<double> pool(out.samples.values.col(j).tail(11).begin(),
                             out.samples.values.col(j).tail(11).end());
    for (Eigen::Index i = 6; i < 12; ++i) {
      const auto it = std::find(pool.begin(), pool.end(), x.values(i, j));
      ASSERT_NE(it, pool.end());
      pool.erase(it);
    }
    EXPECT_EQ(pool.size(), 5u);
  }
}

TEST(ShuffleProduct, ColumnsUseIndependentPermutations) {
  // With one shared permutation the genuine values of row 6 would stay aligned.
  const Dataset x = gaussian_rows(2, 40, 12);
  Rng rng(13);
  int aligned = 0;
  for (int r = 0; r < 200; ++r) {
    const auto out = shuffle_amplify_product(x, std::vector<Learner>(2, gaussian_mean_plugin()), 1, rng);
    for (Eigen::Index i = 20; i < 41; ++i)
      if (out.samples.values(i, 0) == x.values(20, 0)) aligned += out.samples.values(i, 1) == x.values(20, 1);
  }
  EXPECT_LT(aligned, 40);
}

TEST(ShuffleProduct, SingleCoordinateMatchesGeneralBound) {
  const Dataset x = gaussian_rows(1, 20, 14);
  Rng a(15);
  Rng b(15);
  EXPECT_DOUBLE_EQ(shuffle_amplify_product(x, {gaussian_mean_plugin()}, 3, a).bound.value,
                   shuffle_amplify_general(x, gaussian_mean_plugin(), 3, b).bound.value);
}

TEST(Shuffle, OddSampleSizeRejected) {
  Rng rng(16);
  try {
    shuffle_amplify_general(symbols(3, {1, 2, 3}), empirical_discrete(3), 1, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRequiresEvenN);
  }
  EXPECT_THROW(shuffle_amplify_product(gaussian_rows(2, 7, 1), std::vector<Learner>(2, gaussian_mean_plugin()), 1, rng),
               Error);
}

TEST(Shuffle, Chi2BoundEdgeCases) {
  EXPECT_EQ(shuffle_chi2_bound(0.7, 10, 0), 0.0);
  EXPECT_NEAR(shuffle_chi2_bound(0.5, 0, 3), std::pow(1.5, 3) - 1.0, 1e-14);
  EXPECT_NEAR(shuffle_chi2_bound(0.5, 6, 2), std::pow(1.0 + 0.25 * 0.5, 2) - 1.0, 1e-15);
  EXPECT_THROW(shuffle_chi2_bound(-0.1, 1, 1), Error);
}

// Independent Monte Carlo of the expected chi2 of each plug-in fit on n rows
// of a standard member of the family.
TEST(Chi2Guarantee, GaussianPluginMatchesMonteCarlo) {
  const int n = 12;
  Rng rng(17);
  RunningStats s;
  for (int r = 0; r < 200000; ++r) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += rng.normal();
    mean /= n;
    s.add(std::expm1(mean * mean));
  }
  EXPECT_NEAR(chi2_guarantee(gaussian_mean_plugin(), n).value, s.mean(), 4.0 * s.std_error());
}

TEST(Chi2Guarantee, UniformMleMatchesMonteCarlo) {
  const int n = 10;
  Rng rng(18);
  RunningStats s;
  for (int r = 0; r < 200000; ++r) {
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
    // chi2(P, Q) with P the truth: the squared form (1/(hi-lo))^2 - 1 dominates
    // the exact 1/(hi-lo) - 1, and the guarantee uses it.
    s.add(1.0 / ((hi - lo) * (hi - lo)) - 1.0);
  }
  EXPECT_NEAR(chi2_guarantee(uniform_mle(), n).value, s.mean(), 5.0 * s.std_error());
}

TEST(Chi2Guarantee, EmpiricalDiscreteMatchesMonteCarlo) {
  const std::vector<double> p = {0.5, 0.3, 0.15, 0.05};
  const int n = 30;
  Rng rng(19);
  RunningStats s;
  for (int r = 0; r < 100000; ++r) {
    std::vector<double> q(4, 0.0);
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      q[u < 0.5 ? 0 : u < 0.8 ? 1 : u < 0.95 ? 2 : 3] += 1.0 / n;
    }
    double c = -1.0;
    for (int j = 0; j < 4; ++j) c += q[j] * q[j] / p[j];
    s.add(c);
  }
  EXPECT_NEAR(chi2_guarantee(empirical_discrete(4), n).value, s.mean(), 4.0 * s.std_error());
}

TEST(Chi2Guarantee, ClippedExponentialMatchesMonteCarlo) {
  const int n = 8;
  Rng rng(20);
  RunningStats s;
  for (int r = 0; r < 100000; ++r) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum -= std::log(rng.uniform());
    const double rate = n / sum;
    // chi2(Exp(rate), Exp(1)) = rate^2 / (2 rate - 1) - 1 when rate > 1/2.
    const double c = rate > 0.5 ? rate * rate / (2.0 * rate - 1.0) - 1.0 : 1e300;
    s.add(std::min(c, static_cast<double>(n)));
  }
  const Chi2Guarantee g = chi2_guarantee(exponential_rate_plugin(), n);
  EXPECT_TRUE(g.estimated);
  EXPECT_NEAR(g.value, s.mean(), 4.0 * std::hypot(s.std_error(), g.std_error));
}

TEST(Chi2Guarantee, TopElementAndAvailability) {
  EXPECT_NEAR(chi2_guarantee(top_element_plugin(0.01), 100).value, 99.0, 1e-12);
  EXPECT_FALSE(chi2_guarantee(gaussian_mean_plugin(), 2).available);
  EXPECT_FALSE(chi2_guarantee(uniform_mle(), 3).available);
  // An unavailable guarantee reports the trivial bound.
  Rng rng(21);
  const auto out = shuffle_amplify_general(gaussian_rows(1, 4, 2), gaussian_mean_plugin(), 1, rng);
  EXPECT_EQ(out.bound.value, 1.0);
  EXPECT_FALSE(out.bound.validity_holds);
}

TEST(TopElement, ShuffleBoundAtFourOverT) {
  const double t = 0.01;
  const int n = static_cast<int>(std::ceil(4.0 / t));
  Dataset x;
  x.family.kind = FamilyKind::kTopElementDiscrete;
  x.family.dim = 400;
  x.family.top_mass = t;
  x.symbols.assign(static_cast<std::size_t>(n), 0);
  Rng rng(22);
  const auto out = shuffle_amplify_general(x, top_element_plugin(t), 1, rng);
  EXPECT_NEAR(out.bound.value, std::sqrt(1.0 / n * (1.0 / t - 1.0)), 1e-15);
  EXPECT_LE(out.bound.value, 0.6);
}

}  // namespace
}  // namespace sampamp
