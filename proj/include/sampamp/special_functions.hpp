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

#ifndef SAMPAMP_SPECIAL_FUNCTIONS_HPP_
#define SAMPAMP_SPECIAL_FUNCTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "sampamp/error.hpp"

namespace sampamp {

inline double log_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), ErrorCode::kDomain,
          "log_gamma needs x > 0, got " + std::to_string(x));
  return boost::math::lgamma(x);
}

inline double digamma(double x) {
  require(x > 0.0 && std::isfinite(x), ErrorCode::kDomain,
          "digamma needs x > 0, got " + std::to_string(x));
  return boost::math::digamma(x);
}

inline double trigamma(double x) {
  require(x > 0.0 && std::isfinite(x), ErrorCode::kDomain,
          "trigamma needs x > 0, got " + std::to_string(x));
  return boost::math::trigamma(x);
}

// log of pi^{d(d-1)/4} prod_{i=1..d} Gamma(x - (i-1)/2).
inline double multivariate_log_gamma(double x, int d) {
  require(d >= 1, ErrorCode::kDomain, "multivariate_log_gamma needs d >= 1");
  require(x > 0.5 * (d - 1), ErrorCode::kDomain,
          "multivariate_log_gamma needs x > (d-1)/2");
  double sum = 0.25 * d * (d - 1) * std::log(std::numbers::pi);
  for (int i = 0; i < d; ++i) sum += log_gamma(x - 0.5 * i);
  return sum;
}

inline double multivariate_digamma(double x, int d) {
  require(d >= 1, ErrorCode::kDomain, "multivariate_digamma needs d >= 1");
  require(x > 0.5 * (d - 1), ErrorCode::kDomain,
          "multivariate_digamma needs x > (d-1)/2");
  double sum = 0.0;
  for (int i = 0; i < d; ++i) sum += digamma(x - 0.5 * i);
  return sum;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double chi2_cdf(double x, double k) {
  require(k > 0.0 && std::isfinite(k), ErrorCode::kDomain, "chi2_cdf needs dof > 0");
  require(!std::isnan(x), ErrorCode::kDomain, "chi2_cdf got NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * k, 0.5 * x);
}

// P(Binomial(n, p) <= k).
inline double binomial_cdf(std::int64_t k, std::int64_t n, double p) {
  require(n >= 0, ErrorCode::kDomain, "binomial_cdf needs n >= 0");
  require(p >= 0.0 && p <= 1.0, ErrorCode::kDomain, "binomial_cdf needs p in [0,1]");
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  return boost::math::ibetac(static_cast<double>(k + 1), static_cast<double>(n - k), p);
}

// P(Binomial(n, p) >= k).
inline double binomial_sf(std::int64_t k, std::int64_t n, double p) {
  require(n >= 0, ErrorCode::kDomain, "binomial_sf needs n >= 0");
  require(p >= 0.0 && p <= 1.0, ErrorCode::kDomain, "binomial_sf needs p in [0,1]");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

inline double log_poisson_pmf(double k, double mean) {
  if (k < 0.0 || k != std::floor(k)) return -std::numeric_limits<double>::infinity();
  if (mean == 0.0) return k == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return k * std::log(mean) - mean - std::lgamma(k + 1.0);
}

// Asymptotic Kolmogorov survival function Q(x) = 2 sum (-1)^{j-1} exp(-2 j^2 x^2).
inline double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) {
    // Dual theta series, accurate where the alternating one converges slowly.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int j = 1; j <= 50; ++j) {
      const double k = 2.0 * j - 1.0;
      sum += std::exp(-k * k * pi2 / (8.0 * x * x));
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum;
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace sampamp

#endif  // SAMPAMP_SPECIAL_FUNCTIONS_HPP_
