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

#ifndef SAMPAMP_SAMPLERS_HPP_
#define SAMPAMP_SAMPLERS_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sampamp/error.hpp"
#include "sampamp/linalg.hpp"
#include "sampamp/rng.hpp"

namespace sampamp {

inline std::vector<double> sample_std_normal(Rng& rng, std::size_t count) {
  std::vector<double> out(count);
  for (auto& z : out) z = rng.normal();
  return out;
}

// Marsaglia and Tsang (2000) squeeze-rejection for shape >= 1. Shapes below
// one use G(a) = G(a+1) * U^{1/a}.
inline double sample_gamma(Rng& rng, double shape, double rate = 1.0) {
  require(shape > 0.0 && std::isfinite(shape), ErrorCode::kDomain, "gamma shape must be > 0");
  require(rate > 0.0 && std::isfinite(rate), ErrorCode::kDomain, "gamma rate must be > 0");
  double boost = 1.0;
  double a = shape;
  if (a < 1.0) {
    boost = std::exp(std::log(rng.uniform()) / a);
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 ||
        std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return boost * d * v / rate;
    }
  }
}

inline double sample_chi2(Rng& rng, double dof) {
  require(dof > 0.0, ErrorCode::kDomain, "chi2 dof must be > 0");
  return 2.0 * sample_gamma(rng, 0.5 * dof, 1.0);
}

inline double sample_beta(Rng& rng, double a, double b) {
  const double x = sample_gamma(rng, a);
  const double y = sample_gamma(rng, b);
  return x / (x + y);
}

// Exact binomial draw. Small n counts Bernoulli trials; larger n splits on
// the order statistic of a Beta variate (Knuth, TAOCP 3.4.1).
inline std::int64_t sample_binomial(Rng& rng, std::int64_t n, double p) {
  require(n >= 0, ErrorCode::kDomain, "binomial n must be >= 0");
  require(p >= 0.0 && p <= 1.0, ErrorCode::kDomain, "binomial p must be in [0,1]");
  std::int64_t offset = 0;
  while (n > 0 && p > 0.0 && p < 1.0) {
    if (n < 40) {
      std::int64_t count = 0;
      for (std::int64_t i = 0; i < n; ++i) count += rng.uniform() < p ? 1 : 0;
      return offset + count;
    }
    const std::int64_t a = 1 + n / 2;
    const std::int64_t b = n + 1 - a;
    const double x = sample_beta(rng, static_cast<double>(a), static_cast<double>(b));
    if (x >= p) {
      n = a - 1;
      p = p / x;
    } else {
      offset += a;
      n = b - 1;
      p = (p - x) / (1.0 - x);
    }
  }
  if (n <= 0 || p <= 0.0) return offset;
  return offset + n;
}

// Sequential inversion for small means; Ahrens-Dieter gamma splitting for
// large means (Knuth, TAOCP 3.4.1). Both are exact.
inline std::int64_t sample_poisson(Rng& rng, double mean) {
  require(mean >= 0.0 && std::isfinite(mean), ErrorCode::kDomain,
          "poisson mean must be >= 0, got " + std::to_string(mean));
  std::int64_t offset = 0;
  while (mean >= 30.0) {
    const auto k = static_cast<std::int64_t>(std::floor(0.875 * mean));
    const double x = sample_gamma(rng, static_cast<double>(k));
    if (x < mean) {
      offset += k;
      mean -= x;
    } else {
      return offset + sample_binomial(rng, k - 1, mean / x);
    }
  }
  if (mean == 0.0) return offset;
  const double u = rng.uniform();
  double pk = std::exp(-mean);
  double cdf = pk;
  std::int64_t k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    pk *= mean / static_cast<double>(k);
    cdf += pk;
  }
  return offset + k;
}

// Uniform point on the simplex, via normalized unit exponentials.
inline std::vector<double> sample_dirichlet(Rng& rng, std::size_t dim) {
  require(dim >= 1, ErrorCode::kDomain, "dirichlet dimension must be >= 1");
  std::vector<double> out(dim);
  double sum = 0.0;
  for (auto& e : out) {
    e = -std::log(rng.uniform());
    sum += e;
  }
  for (auto& e : out) e /= sum;
  return out;
}

// Allocates total balls into cells with equal probabilities.
inline std::vector<std::int64_t> sample_multinomial_uniform(Rng& rng, std::int64_t total,
                                                            std::size_t cells) {
  require(cells >= 1, ErrorCode::kDomain, "multinomial needs at least one cell");
  require(total >= 0, ErrorCode::kDomain, "multinomial total must be >= 0");
  std::vector<std::int64_t> out(cells, 0);
  std::int64_t remaining = total;
  for (std::size_t i = 0; i + 1 < cells && remaining > 0; ++i) {
    const double p = 1.0 / static_cast<double>(cells - i);
    out[i] = sample_binomial(rng, remaining, p);
    remaining -= out[i];
  }
  out[cells - 1] += remaining;
  return out;
}

// Fisher-Yates, descending form.
template <typename T>
void shuffle_in_place(Rng& rng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  shuffle_in_place(rng, perm);
  return perm;
}

// Draws rows x = mu + R z with R R^T = cov, using the symmetric root.
inline Matrix sample_mvn_rows(Rng& rng, const Vector& mean, const SymMatrix& root,
                              std::size_t rows) {
  const Eigen::Index d = mean.size();
  Matrix z(static_cast<Eigen::Index>(rows), d);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = rng.normal();
  }
  Matrix out = z * root.transpose();
  out.rowwise() += mean.transpose();
  return out;
}

}  // namespace sampamp

#endif  // SAMPAMP_SAMPLERS_HPP_
