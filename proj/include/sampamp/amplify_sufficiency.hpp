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

#ifndef SAMPAMP_AMPLIFY_SUFFICIENCY_HPP_
#define SAMPAMP_AMPLIFY_SUFFICIENCY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "sampamp/divergences.hpp"
#include "sampamp/error.hpp"
#include "sampamp/families.hpp"
#include "sampamp/numerics.hpp"

namespace sampamp {

struct AmplifierOutput {
  Dataset samples;
  std::string method;
  BoundReport bound;
  std::optional<SufficientStat> target_stat;
};

namespace detail {

inline Dataset derived_dataset(const Dataset& input, Matrix values, const Rng& rng,
                               const std::string& method) {
  Dataset out;
  out.family = input.family;
  out.values = std::move(values);
  out.seed = rng.state();
  out.provenance = "amplify:" + method;
  return out;
}

inline Matrix standard_normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = rng.normal();
  return z;
}

inline void require_real_data(const Dataset& data, const char* method) {
  require(!is_symbolic(data.family.kind), ErrorCode::kValidation,
          std::string(method) + " needs real-valued data");
  require(data.values.rows() >= 1 && data.values.cols() >= 1, ErrorCode::kInsufficientSamples,
          std::string(method) + " needs at least one row");
  require(data.values.allFinite(), ErrorCode::kValidation,
          std::string(method) + " got non-finite entries");
}

}  // namespace detail

// Ancillary statistic: the centered sample Z - mean(Z), independent of the
// mean for a Gaussian with known covariance.
inline AmplifierOutput amplify_gaussian_mean(const Dataset& data, const SymMatrix& sigma,
                                             std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "amplify_gaussian_mean");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  require(sigma.rows() == d && sigma.cols() == d, ErrorCode::kValidation,
          "covariance must be d x d");
  const SymMatrix root = sym_sqrt(sigma);
  const Vector t_n = data.values.colwise().mean().transpose();
  Matrix z = detail::standard_normal_matrix(rng, n + m, d) * root;
  const Vector shift = t_n - z.colwise().mean().transpose();
  z.rowwise() += shift.transpose();

  AmplifierOutput out;
  out.method = "sufficiency_gaussian_mean";
  out.samples = detail::derived_dataset(data, std::move(z), rng, out.method);
  out.bound = bound_gaussian_mean(static_cast<double>(n), static_cast<double>(m),
                                  static_cast<double>(d));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kMean;
  t.n = n + m;
  t.mean = t_n;
  out.target_stat = t;
  return out;
}

// Known zero mean. Ancillary frame S = W^{-1/2} Z^T with W = Z^T Z, uniform
// on the Stiefel manifold when n+m >= d.
inline AmplifierOutput amplify_gaussian_cov(const Dataset& data, std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "amplify_gaussian_cov");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  const double total = static_cast<double>(n + m);
  const SymMatrix sigma_n = data.values.transpose() * data.values / static_cast<double>(n);
  const Matrix z = detail::standard_normal_matrix(rng, n + m, d);
  const SymMatrix w_inv_root = sym_sqrt(z.transpose() * z, /*pseudo=*/true);
  const SymMatrix color = sym_sqrt(total * sigma_n);
  Matrix x = z * w_inv_root * color;

  AmplifierOutput out;
  out.method = "sufficiency_gaussian_cov";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = bound_gaussian_cov(static_cast<double>(n), static_cast<double>(m),
                                 static_cast<double>(d));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kSecondMoment;
  t.n = n + m;
  t.cov = sigma_n;
  out.target_stat = t;
  return out;
}

// Unknown mean and covariance. The frame is built from centered normals so
// it is orthogonal to the all-ones vector.
inline AmplifierOutput amplify_gaussian_mean_cov(const Dataset& data, std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "amplify_gaussian_mean_cov");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  require(n >= 2, ErrorCode::kInsufficientSamples, "amplify_gaussian_mean_cov needs n >= 2");
  const Vector mean = data.values.colwise().mean().transpose();
  const Matrix centered = data.values.rowwise() - mean.transpose();
  const SymMatrix sigma_n = centered.transpose() * centered / static_cast<double>(n - 1);

  Matrix z = detail::standard_normal_matrix(rng, n + m, d);
  z.rowwise() -= z.colwise().mean();
  const SymMatrix w_inv_root = sym_sqrt(z.transpose() * z, /*pseudo=*/true);
  const SymMatrix color = sym_sqrt(static_cast<double>(n + m - 1) * sigma_n);
  Matrix x = z * w_inv_root * color;
  x.rowwise() += mean.transpose();

  AmplifierOutput out;
  out.method = "sufficiency_gaussian_mean_cov";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = bound_gaussian_mean_cov(static_cast<double>(n), static_cast<double>(m),
                                      static_cast<double>(d));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kMeanCov;
  t.n = n + m;
  t.mean = mean;
  t.cov = sigma_n;
  out.target_stat = t;
  return out;
}

// Ancillary statistic: X / sum(X), uniform on the simplex.
inline AmplifierOutput amplify_exponential(const Dataset& data, std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "amplify_exponential");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  require((data.values.array() > 0.0).all(), ErrorCode::kDomain,
          "amplify_exponential needs strictly positive entries");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  const Vector t_n = data.values.colwise().mean().transpose();
  const auto total = static_cast<std::size_t>(n + m);
  Matrix x(n + m, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto weights = sample_dirichlet(rng, total);
    for (std::size_t i = 0; i < total; ++i)
      x(static_cast<Eigen::Index>(i), j) = static_cast<double>(total) * t_n(j) * weights[i];
  }

  AmplifierOutput out;
  out.method = "sufficiency_exponential";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = bound_exponential(static_cast<double>(n), static_cast<double>(m),
                                static_cast<double>(d));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kMean;
  t.n = n + m;
  t.mean = t_n;
  out.target_stat = t;
  return out;
}

// Ancillary statistic: (X - min) / (max - min), parameter free for uniforms.
inline AmplifierOutput amplify_uniform(const Dataset& data, std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "amplify_uniform");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  require(n >= 2, ErrorCode::kInsufficientSamples, "amplify_uniform needs n >= 2");
  const Vector lo = data.values.colwise().minCoeff().transpose();
  const Vector hi = data.values.colwise().maxCoeff().transpose();
  for (Eigen::Index j = 0; j < d; ++j) {
    require(hi(j) > lo(j), ErrorCode::kDegenerateSupport,
            "coordinate " + std::to_string(j + 1) + " has min = max");
  }
  const Eigen::Index total = n + m;
  Matrix x(total, d);
  Vector z(total);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < total; ++i) z(i) = rng.uniform();
    const double zmin = z.minCoeff();
    const double width = z.maxCoeff() - zmin;
    for (Eigen::Index i = 0; i < total; ++i) {
      const double s = (z(i) - zmin) / width;
      // The convex form hits both endpoints exactly at s = 0 and s = 1.
      x(i, j) = std::clamp((1.0 - s) * lo(j) + s * hi(j), lo(j), hi(j));
    }
  }

  AmplifierOutput out;
  out.method = "sufficiency_uniform";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = bound_uniform(static_cast<double>(n), static_cast<double>(m),
                            static_cast<double>(d));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kMinMax;
  t.n = total;
  t.min = lo;
  t.max = hi;
  out.target_stat = t;
  return out;
}

namespace detail {

// Given column totals, Poisson rows are a uniform multinomial allocation.
inline void allocate_counts(Rng& rng, const Vector& totals, Matrix& block) {
  for (Eigen::Index j = 0; j < totals.size(); ++j) {
    const auto counts = sample_multinomial_uniform(
        rng, static_cast<std::int64_t>(std::llround(totals(j))), static_cast<std::size_t>(block.rows()));
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      block(i, j) = static_cast<double>(counts[static_cast<std::size_t>(i)]);
  }
}

inline void require_counts(const Matrix& x, const char* method) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x.data()[i];
    require(v >= 0.0 && v == std::floor(v), ErrorCode::kValidation,
            std::string(method) + " needs nonnegative integer counts");
  }
}

}  // namespace detail

// Learns rates on the first half, adds Z ~ Poi(m lambda_hat) to the second
// half's totals and resamples n/2 + m rows given the new totals.
inline AmplifierOutput amplify_poisson_hybrid(const Dataset& data, std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "amplify_poisson_hybrid");
  detail::require_counts(data.values, "amplify_poisson_hybrid");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  require(n >= 2 && n % 2 == 0, ErrorCode::kRequiresEvenN,
          "amplify_poisson_hybrid splits the sample and needs even n >= 2");
  const Eigen::Index half = n / 2;
  const Vector rate_hat = data.values.topRows(half).colwise().mean().transpose();
  Vector totals = data.values.bottomRows(half).colwise().sum().transpose();
  for (Eigen::Index j = 0; j < d; ++j)
    totals(j) += static_cast<double>(sample_poisson(rng, static_cast<double>(m) * rate_hat(j)));

  Matrix x(n + m, d);
  x.topRows(half) = data.values.topRows(half);
  Matrix block(half + m, d);
  detail::allocate_counts(rng, totals, block);
  x.bottomRows(half + m) = block;

  AmplifierOutput out;
  out.method = "hybrid_poisson";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = bound_poisson_hybrid(static_cast<double>(n), static_cast<double>(m),
                                   static_cast<double>(d));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kCounts;
  t.n = n + m;
  t.counts = data.values.topRows(half).colwise().sum().transpose() + totals;
  out.target_stat = t;
  return out;
}

// Identity map on the count totals, then uniform multinomial allocation.
inline AmplifierOutput amplify_poissonized_discrete(const Dataset& data, std::int64_t m,
                                                    Rng& rng) {
  detail::require_real_data(data, "amplify_poissonized_discrete");
  detail::require_counts(data.values, "amplify_poissonized_discrete");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Eigen::Index n = data.values.rows();
  const Eigen::Index d = data.values.cols();
  const Vector totals = data.values.colwise().sum().transpose();
  Matrix x(n + m, d);
  detail::allocate_counts(rng, totals, x);

  AmplifierOutput out;
  out.method = "sufficiency_poissonized_discrete";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = bound_poissonized(static_cast<double>(n), static_cast<double>(m));
  SufficientStat t;
  t.kind = SufficientStat::Kind::kCounts;
  t.n = n + m;
  t.counts = totals;
  out.target_stat = t;
  return out;
}

// Orthonormal basis of the span of the observations; requires rank >= d.
inline Matrix recover_lowrank_frame(const Matrix& x, int rank) {
  require(rank >= 1 && x.cols() >= rank + 1, ErrorCode::kValidation,
          "low-rank model needs ambient p >= d+1");
  require(x.rows() >= rank, ErrorCode::kImpossible,
          "low-rank covariance of rank " + std::to_string(rank) + " from n = " +
              std::to_string(x.rows()) +
              " samples: an (n, n+1) amplification exists if and only if n >= d");
  Eigen::JacobiSVD<Matrix> svd(x.transpose(), Eigen::ComputeThinU);
  const Vector sv = svd.singularValues();
  require(sv(rank - 1) > 1e-10 * sv(0), ErrorCode::kDegenerateSupport,
          "observations span fewer than d dimensions");
  return svd.matrixU().leftCols(rank);
}

inline AmplifierOutput amplify_lowrank_cov(const Dataset& data, int rank, std::int64_t m,
                                           Rng& rng) {
  detail::require_real_data(data, "amplify_lowrank_cov");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const Matrix frame = recover_lowrank_frame(data.values, rank);
  const Eigen::Index n = data.values.rows();
  Matrix x(n + m, data.values.cols());
  x.topRows(n) = data.values;
  x.bottomRows(m) = detail::standard_normal_matrix(rng, m, rank) * frame.transpose();

  AmplifierOutput out;
  out.method = "learning_lowrank_cov";
  out.samples = detail::derived_dataset(data, std::move(x), rng, out.method);
  out.bound = make_tv_bound(0.0, formula::kLowRankExact,
                            "low-rank covariance: span recovered exactly once n >= d",
                            "n >= d", true);
  return out;
}

}  // namespace sampamp

#endif  // SAMPAMP_AMPLIFY_SUFFICIENCY_HPP_
