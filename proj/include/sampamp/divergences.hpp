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

#ifndef SAMPAMP_DIVERGENCES_HPP_
#define SAMPAMP_DIVERGENCES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sampamp/error.hpp"
#include "sampamp/families.hpp"
#include "sampamp/mc.hpp"
#include "sampamp/numerics.hpp"

namespace sampamp {

// Stable formula identifiers used in reports.
namespace formula {
inline constexpr const char* kGaussianMeanKl = "gaussian_mean_kl_tv";
inline constexpr const char* kGaussianExactTv = "gaussian_exact_tv";
inline constexpr const char* kCovariance = "covariance_2md_over_n";
inline constexpr const char* kMeanCovariance = "mean_covariance_3md_over_n1";
inline constexpr const char* kExponentialGammaKl = "exponential_gamma_kl_tv";
inline constexpr const char* kUniformMinMaxKl = "uniform_minmax_kl_tv";
inline constexpr const char* kPoissonHybrid = "poisson_hybrid_m_sqrt2d_over_n";
inline constexpr const char* kPoissonized = "poissonized_sqrt_m2_over_2n";
inline constexpr const char* kLowRankExact = "lowrank_exact_recovery";
inline constexpr const char* kShuffleGeneral = "shuffle_general_chi2";
inline constexpr const char* kShuffleProduct = "shuffle_product_chi2";
inline constexpr const char* kVotingGap = "voting_bayes_gap";
inline constexpr const char* kProductCertificate = "product_lower_certificate";
inline constexpr const char* kSparseFloor = "sparse_amplification_floor";
inline constexpr const char* kSuffStatMc = "suffstat_density_ratio_mc";
}  // namespace formula

struct BoundReport {
  double value = 0.0;      // clipped to [0,1] for TV-type bounds
  double unclipped = 0.0;  // value before clipping
  std::string formula_id;
  std::string validity;    // precondition under which the bound is proven
  bool validity_holds = true;
  std::string anchor;      // short name of the underlying result
  bool estimated = false;  // depends on a Monte Carlo estimate
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

inline BoundReport make_tv_bound(double unclipped, const char* id, std::string anchor,
                                 std::string validity = "none", bool holds = true) {
  BoundReport r;
  r.unclipped = std::max(0.0, unclipped);
  r.value = std::min(1.0, r.unclipped);
  r.formula_id = id;
  r.anchor = std::move(anchor);
  r.validity = std::move(validity);
  r.validity_holds = holds;
  return r;
}

namespace detail {
inline void require_nm(double n, double m) {
  require(n >= 1.0 && std::isfinite(n), ErrorCode::kDomain, "n must be >= 1");
  require(m >= 0.0 && std::isfinite(m), ErrorCode::kDomain, "m must be >= 0");
}
// x - log(1+x), accurate for small x.
inline double x_minus_log1p(double x) {
  if (std::fabs(x) < 1e-4) {
    return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.25 - x / 5.0)));
  }
  return x - std::log1p(x);
}
}  // namespace detail

// KL(N(theta, S/n) || N(theta, S/(n+m))) for d coordinates.
inline double gaussian_scaling_kl(double n, double m, double d) {
  detail::require_nm(n, m);
  return 0.5 * d * detail::x_minus_log1p(m / n);
}

// Exact TV between N(0, I/n) and N(0, I/(n+m)) in d dimensions.
inline double gaussian_scaling_tv_exact(double n, double m, double d) {
  detail::require_nm(n, m);
  if (m == 0.0) return 0.0;
  const double r_star = d * std::log1p(m / n) / m;
  return chi2_cdf(r_star * (n + m), d) - chi2_cdf(r_star * n, d);
}

// KL between the laws of n-normalized Wishart statistics at sizes n and n+m.
inline double wishart_kl(double n, double m, int d) {
  require(d >= 1, ErrorCode::kDomain, "wishart_kl needs d >= 1");
  require(n > d - 1.0, ErrorCode::kDomain, "wishart_kl needs n > d-1");
  require(m >= 0.0, ErrorCode::kDomain, "wishart_kl needs m >= 0");
  if (m == 0.0) return 0.0;
  return 0.5 * d * (m - (n + m) * std::log1p(m / n)) +
         multivariate_log_gamma(0.5 * (n + m), d) - multivariate_log_gamma(0.5 * n, d) -
         0.5 * m * multivariate_digamma(0.5 * n, d);
}

// KL between product Gamma(n, n lambda) and Gamma(n+m, (n+m) lambda) laws.
inline double gamma_kl(double n, double m, double d) {
  detail::require_nm(n, m);
  if (m == 0.0) return 0.0;
  return d * (m - (n + m) * std::log1p(m / n) + log_gamma(n + m) - log_gamma(n) -
              m * digamma(n));
}

// KL between the min/max statistic laws of uniform samples.
inline double uniform_minmax_kl(double n, double m, double d) {
  require(n >= 2.0, ErrorCode::kDomain, "uniform_minmax_kl needs n >= 2");
  require(m >= 0.0, ErrorCode::kDomain, "uniform_minmax_kl needs m >= 0");
  return d * (detail::x_minus_log1p(m / n) + detail::x_minus_log1p(m / (n - 1.0)));
}

inline double amplification_bound_general(double n, double m, double chi2_guarantee) {
  detail::require_nm(n, m);
  require(chi2_guarantee >= 0.0, ErrorCode::kDomain, "chi2 guarantee must be >= 0");
  return std::min(1.0, std::sqrt(m * m / n * chi2_guarantee));
}

inline double amplification_bound_product(double n, double m, const std::vector<double>& r) {
  double total = 0.0;
  for (double x : r) {
    require(x >= 0.0, ErrorCode::kDomain, "chi2 guarantee must be >= 0");
    total += x;
  }
  return amplification_bound_general(n, m, total);
}

inline double hellinger_tensorize(const std::vector<double>& h2s) {
  double keep = 1.0;
  for (double h2 : h2s) {
    require(h2 >= 0.0 && h2 <= 1.0, ErrorCode::kDomain, "H^2 must lie in [0,1]");
    keep *= 1.0 - h2;
  }
  return 1.0 - keep;
}

// (lower, upper) bounds on TV from squared Hellinger distance.
inline std::pair<double, double> tv_hellinger_sandwich(double h2) {
  require(h2 >= 0.0 && h2 <= 1.0, ErrorCode::kDomain, "H^2 must lie in [0,1]");
  return {h2, std::sqrt(h2 * (2.0 - h2))};
}

// Monte Carlo TV between t-fold products, evaluated at every size in `sizes`
// (ascending) along the same simulated paths: E_p[(1 - prod q/p)_+] with
// p = p_{theta1}, q = p_{theta2}.
inline std::vector<McEstimate> tv_product_mc_path(const ScalarFamily& f, double theta1,
                                                  double theta2,
                                                  const std::vector<std::int64_t>& sizes,
                                                  std::int64_t reps, Rng& rng) {
  validate_scalar_param(f, theta1);
  validate_scalar_param(f, theta2);
  require(reps >= 2, ErrorCode::kDomain, "need at least 2 replicates");
  require(!sizes.empty() && sizes.front() >= 1, ErrorCode::kDomain, "sizes must be >= 1");
  require(std::is_sorted(sizes.begin(), sizes.end()), ErrorCode::kDomain, "sizes must ascend");
  std::vector<RunningStats> acc(sizes.size());
  if (theta1 == theta2) {
    std::vector<McEstimate> zero(sizes.size());
    for (auto& z : zero) z.reps = reps;
    return zero;
  }
  for (std::int64_t r = 0; r < reps; ++r) {
    double llr = 0.0;
    std::int64_t done = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      for (; done < sizes[k]; ++done) llr += scalar_sample_llr(f, theta1, theta2, rng);
      acc[k].add(llr >= 0.0 ? 0.0 : -std::expm1(llr));
    }
  }
  std::vector<McEstimate> out;
  out.reserve(sizes.size());
  for (const auto& a : acc) out.push_back(a.estimate());
  return out;
}

inline McEstimate tv_product_mc(const ScalarFamily& f, double theta1, double theta2,
                                std::int64_t t, std::int64_t reps, Rng& rng) {
  return tv_product_mc_path(f, theta1, theta2, {t}, reps, rng).front();
}

// Reports attached by the amplifiers.
inline BoundReport bound_gaussian_mean(double n, double m, double d) {
  return make_tv_bound(std::sqrt(0.5 * gaussian_scaling_kl(n, m, d)), formula::kGaussianMeanKl,
                       "Gaussian mean: TV <= sqrt(KL/2), KL = d/2 (m/n - log(1+m/n))");
}

inline BoundReport bound_gaussian_exact(double n, double m, double d) {
  BoundReport r = make_tv_bound(gaussian_scaling_tv_exact(n, m, d), formula::kGaussianExactTv,
                                "Gaussian mean: exact minimax error");
  return r;
}

inline BoundReport bound_gaussian_cov(double n, double m, double d) {
  return make_tv_bound(2.0 * m * d / n, formula::kCovariance,
                       "known-mean covariance: TV <= 2md/n", "n >= 4 max(m, d)",
                       n >= 4.0 * std::max(m, d));
}

inline BoundReport bound_gaussian_mean_cov(double n, double m, double d) {
  require(n >= 2.0, ErrorCode::kInsufficientSamples, "mean and covariance needs n >= 2");
  return make_tv_bound(3.0 * m * d / (n - 1.0), formula::kMeanCovariance,
                       "mean and covariance: TV <= 3md/(n-1)", "n-1 >= 4 max(m, d)",
                       n - 1.0 >= 4.0 * std::max(m, d));
}

inline BoundReport bound_exponential(double n, double m, double d) {
  return make_tv_bound(std::sqrt(0.5 * gamma_kl(n, m, d)), formula::kExponentialGammaKl,
                       "product exponential: TV <= sqrt(KL/2) of Gamma statistic laws");
}

inline BoundReport bound_uniform(double n, double m, double d) {
  return make_tv_bound(std::sqrt(0.5 * uniform_minmax_kl(n, m, d)), formula::kUniformMinMaxKl,
                       "uniform rectangle: TV <= sqrt(KL/2) of min/max statistic laws");
}

inline BoundReport bound_poisson_hybrid(double n, double m, double d) {
  detail::require_nm(n, m);
  return make_tv_bound(m * std::sqrt(2.0 * d) / n, formula::kPoissonHybrid,
                       "product Poisson, sufficiency plus learning: TV <= m sqrt(2d)/n");
}

inline BoundReport bound_poissonized(double n, double m) {
  detail::require_nm(n, m);
  return make_tv_bound(std::sqrt(m * m / (2.0 * n)), formula::kPoissonized,
                       "Poissonized discrete: KL <= m^2/n, TV <= sqrt(m^2/(2n))");
}

}  // namespace sampamp

#endif  // SAMPAMP_DIVERGENCES_HPP_
