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

#ifndef SAMPAMP_AMPLIFY_SHUFFLE_HPP_
#define SAMPAMP_AMPLIFY_SHUFFLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "sampamp/amplify_sufficiency.hpp"
#include "sampamp/divergences.hpp"
#include "sampamp/error.hpp"
#include "sampamp/families.hpp"
#include "sampamp/mc.hpp"
#include "sampamp/numerics.hpp"

namespace sampamp {

enum class LearnerKind {
  kEmpiricalDiscrete,
  kGaussianMeanPlugin,
  kUniformMle,
  kExponentialRatePlugin,
  kSoftThresholdSparse,
  kTopElementPlugin,
};

inline const char* learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kEmpiricalDiscrete: return "empirical_discrete";
    case LearnerKind::kGaussianMeanPlugin: return "gaussian_mean_plugin";
    case LearnerKind::kUniformMle: return "uniform_mle";
    case LearnerKind::kExponentialRatePlugin: return "exponential_rate_plugin";
    case LearnerKind::kSoftThresholdSparse: return "soft_threshold_sparse";
    case LearnerKind::kTopElementPlugin: return "top_element_plugin";
  }
  return "unknown";
}

// Coordinate learners (Gaussian, uniform, exponential, soft threshold) act on
// one column; applied to whole rows they fit every column independently.
struct Learner {
  LearnerKind kind = LearnerKind::kGaussianMeanPlugin;
  int support = 0;          // k for the empirical learner
  double threshold_c = 0.0; // C for soft thresholding
  double top_mass = 0.0;    // t for the top-element learner
  int sparsity = 0;         // s, used only by the guarantee of soft thresholding
};

inline Learner empirical_discrete(int k) {
  require(k >= 1, ErrorCode::kDomain, "support size must be >= 1");
  return {LearnerKind::kEmpiricalDiscrete, k, 0.0, 0.0, 0};
}
inline Learner gaussian_mean_plugin() { return {LearnerKind::kGaussianMeanPlugin, 0, 0.0, 0.0, 0}; }
inline Learner uniform_mle() { return {LearnerKind::kUniformMle, 0, 0.0, 0.0, 0}; }
inline Learner exponential_rate_plugin() {
  return {LearnerKind::kExponentialRatePlugin, 0, 0.0, 0.0, 0};
}
inline Learner soft_threshold_sparse(double c, int sparsity) {
  require(c > 2.0, ErrorCode::kDomain, "soft-threshold constant must exceed 2");
  require(sparsity >= 1, ErrorCode::kDomain, "sparsity must be >= 1");
  return {LearnerKind::kSoftThresholdSparse, 0, c, 0.0, sparsity};
}
inline Learner top_element_plugin(double t) {
  require(t > 0.0 && t <= 1.0, ErrorCode::kDomain, "top mass must lie in (0,1]");
  return {LearnerKind::kTopElementPlugin, 0, 0.0, t, 0};
}

inline bool is_coordinate_learner(LearnerKind kind) {
  return kind != LearnerKind::kEmpiricalDiscrete && kind != LearnerKind::kTopElementPlugin;
}

// Fitted plug-in distribution.
struct Plugin {
  LearnerKind kind = LearnerKind::kGaussianMeanPlugin;
  Vector a;  // location, lower end or rate per coordinate
  Vector b;  // upper end (uniform)
  std::vector<int> pool;  // training symbols for the empirical learner
};

inline double soft_threshold(double x, double tau) {
  const double mag = std::fabs(x) - tau;
  return mag <= 0.0 ? 0.0 : std::copysign(mag, x);
}

inline double soft_threshold_level(double c, double n) { return std::sqrt(c * std::log(n) / n); }

inline Plugin fit_columns(const Learner& learner, const Matrix& x) {
  require(is_coordinate_learner(learner.kind), ErrorCode::kValidation,
          std::string(learner_name(learner.kind)) + " is not a coordinate learner");
  require(x.rows() >= 1, ErrorCode::kInsufficientSamples, "learner needs at least one row");
  Plugin p;
  p.kind = learner.kind;
  const double n = static_cast<double>(x.rows());
  switch (learner.kind) {
    case LearnerKind::kGaussianMeanPlugin:
      p.a = x.colwise().mean().transpose();
      break;
    case LearnerKind::kSoftThresholdSparse: {
      const double tau = soft_threshold_level(learner.threshold_c, std::max(n, 2.0));
      p.a = x.colwise().mean().transpose();
      for (Eigen::Index j = 0; j < p.a.size(); ++j) p.a(j) = soft_threshold(p.a(j), tau);
      break;
    }
    case LearnerKind::kUniformMle:
      p.a = x.colwise().minCoeff().transpose();
      p.b = x.colwise().maxCoeff().transpose();
      break;
    case LearnerKind::kExponentialRatePlugin:
      require((x.array() > 0.0).all(), ErrorCode::kDomain, "exponential data must be positive");
      p.a = (n / x.colwise().sum().array()).transpose();
      break;
    default:
      break;
  }
  return p;
}

inline Plugin fit_symbols(const Learner& learner, const std::vector<int>& symbols) {
  Plugin p;
  p.kind = learner.kind;
  if (learner.kind == LearnerKind::kEmpiricalDiscrete) {
    require(!symbols.empty(), ErrorCode::kInsufficientSamples, "learner needs at least one row");
    p.pool = symbols;
  } else {
    require(learner.kind == LearnerKind::kTopElementPlugin, ErrorCode::kValidation,
            std::string(learner_name(learner.kind)) + " does not fit symbolic data");
  }
  return p;
}

inline double draw_coordinate(const Plugin& p, Eigen::Index j, Rng& rng) {
  switch (p.kind) {
    case LearnerKind::kGaussianMeanPlugin:
    case LearnerKind::kSoftThresholdSparse:
      return p.a(j) + rng.normal();
    case LearnerKind::kUniformMle:
      return p.a(j) + (p.b(j) - p.a(j)) * rng.uniform();
    case LearnerKind::kExponentialRatePlugin:
      return -std::log(rng.uniform()) / p.a(j);
    default:
      fail(ErrorCode::kValidation, "plug-in is not coordinatewise");
  }
}

inline int draw_symbol(const Plugin& p, Rng& rng) {
  if (p.kind == LearnerKind::kTopElementPlugin) return 0;
  return p.pool[rng.uniform_index(p.pool.size())];
}

// (1 + m/(n+m) chi2)^m - 1.
inline double shuffle_chi2_bound(double chi2, double n, double m) {
  require(chi2 >= 0.0, ErrorCode::kDomain, "chi2 must be >= 0");
  require(n >= 0.0 && m >= 0.0, ErrorCode::kDomain, "n and m must be >= 0");
  if (m == 0.0) return 0.0;
  return std::expm1(m * std::log1p(m / (n + m) * chi2));
}

// Expected chi2 guarantee of a learner trained on n rows, for one coordinate
// (coordinate learners) or for the whole distribution (symbolic learners).
struct Chi2Guarantee {
  double value = 0.0;
  bool available = true;
  bool estimated = false;
  double std_error = 0.0;
  std::string formula;
};

namespace detail {

inline constexpr std::int64_t kClippedChi2Reps = 10000;
inline constexpr std::uint64_t kClippedChi2Seed = 0x5EED0C11FFEDULL;

// E[chi2 ^ n] for the exponential rate plug-in; lambda_hat / lambda has the
// law n / Gamma(n, 1), so the value depends on n only.
inline McEstimate clipped_chi2_exponential(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, McEstimate> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Rng rng(kClippedChi2Seed, static_cast<std::uint64_t>(n));
  RunningStats acc;
  const double dn = static_cast<double>(n);
  for (std::int64_t r = 0; r < kClippedChi2Reps; ++r) {
    const double ratio = dn / sample_gamma(rng, dn);
    const double chi2 = 2.0 * ratio > 1.0
                            ? (ratio - 1.0) * (ratio - 1.0) / (2.0 * ratio - 1.0)
                            : std::numeric_limits<double>::infinity();
    acc.add(std::min(chi2, dn));
  }
  return cache[n] = acc.estimate();
}

// Clipped chi2 of the soft-threshold plug-in at a coordinate with mean theta.
inline McEstimate clipped_chi2_soft_threshold(double theta, double c, std::int64_t n,
                                              std::int64_t reps, std::uint64_t stream) {
  Rng rng(kClippedChi2Seed ^ 0xA5A5ULL, stream);
  RunningStats acc;
  const double dn = static_cast<double>(n);
  const double tau = soft_threshold_level(c, std::max(dn, 2.0));
  for (std::int64_t r = 0; r < reps; ++r) {
    const double est = soft_threshold(theta + rng.normal() / std::sqrt(dn), tau);
    const double diff = est - theta;
    acc.add(std::min(std::expm1(diff * diff), dn));
  }
  return acc.estimate();
}

// (value at a zero coordinate, worst value over nonzero means).
inline std::pair<McEstimate, McEstimate> soft_threshold_profile(double c, std::int64_t n) {
  static std::mutex mu;
  static std::map<std::pair<double, std::int64_t>, std::pair<McEstimate, McEstimate>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(c, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const McEstimate zero = clipped_chi2_soft_threshold(0.0, c, n, kClippedChi2Reps, 0);
  const double dn = static_cast<double>(n);
  const double span = 10.0 * soft_threshold_level(c, std::max(dn, 2.0)) + 10.0 / std::sqrt(dn);
  McEstimate worst = zero;
  for (int g = 1; g <= 40; ++g) {
    const McEstimate e = clipped_chi2_soft_threshold(span * g / 40.0, c, n, kClippedChi2Reps,
                                                     static_cast<std::uint64_t>(g));
    if (e.estimate > worst.estimate) worst = e;
  }
  return cache[key] = {zero, worst};
}

}  // namespace detail

inline Chi2Guarantee chi2_guarantee(const Learner& learner, std::int64_t n) {
  Chi2Guarantee g;
  const double dn = static_cast<double>(n);
  switch (learner.kind) {
    case LearnerKind::kEmpiricalDiscrete:
      g.formula = "(k-1)/n";
      g.available = n >= 1;
      g.value = g.available ? (learner.support - 1.0) / dn : 0.0;
      break;
    case LearnerKind::kGaussianMeanPlugin:
      g.formula = "sqrt(n/(n-2))-1";
      g.available = n >= 3;
      g.value = g.available ? std::sqrt(dn / (dn - 2.0)) - 1.0 : 0.0;
      break;
    case LearnerKind::kUniformMle:
      g.formula = "(4n-6)/((n-2)(n-3))";
      g.available = n >= 4;
      g.value = g.available ? (4.0 * dn - 6.0) / ((dn - 2.0) * (dn - 3.0)) : 0.0;
      break;
    case LearnerKind::kExponentialRatePlugin: {
      g.formula = "mc:E[min(chi2,n)]";
      g.available = n >= 1;
      if (g.available) {
        const McEstimate e = detail::clipped_chi2_exponential(n);
        g.value = e.estimate;
        g.std_error = e.std_error;
        g.estimated = true;
      }
      break;
    }
    case LearnerKind::kSoftThresholdSparse: {
      // Per-coordinate worst case over nonzero means; see
      // soft_threshold_guarantees for the sparsity-aware sum.
      g.formula = "mc:sup_theta E[min(chi2,n)]";
      g.available = n >= 2;
      if (g.available) {
        const auto profile = detail::soft_threshold_profile(learner.threshold_c, n);
        g.value = profile.second.estimate;
        g.std_error = profile.second.std_error;
        g.estimated = true;
      }
      break;
    }
    case LearnerKind::kTopElementPlugin:
      g.formula = "1/t-1";
      g.value = 1.0 / learner.top_mass - 1.0;
      break;
  }
  return g;
}

// Per-coordinate guarantees for a product learner over d coordinates. Soft
// thresholding uses the zero-coordinate value on d-s coordinates and the worst
// nonzero value on s coordinates.
inline std::vector<Chi2Guarantee> coordinate_guarantees(const std::vector<Learner>& learners,
                                                        std::int64_t n) {
  std::vector<Chi2Guarantee> out;
  int sparse_seen = 0;
  for (const Learner& l : learners) {
    Chi2Guarantee g = chi2_guarantee(l, n);
    if (l.kind == LearnerKind::kSoftThresholdSparse && g.available) {
      if (sparse_seen >= l.sparsity) {
        const auto profile = detail::soft_threshold_profile(l.threshold_c, n);
        g.value = profile.first.estimate;
        g.std_error = profile.first.std_error;
      }
      ++sparse_seen;
    }
    out.push_back(g);
  }
  return out;
}

namespace detail {

inline void require_even_split(std::size_t n, const char* method) {
  require(n >= 2 && n % 2 == 0, ErrorCode::kRequiresEvenN,
          std::string(method) + " splits the sample and needs even n >= 2");
}

inline BoundReport shuffle_report(double n, double m, double r, bool available, bool estimated,
                                  double r_std_error, const char* id, const char* anchor) {
  BoundReport rep;
  rep.formula_id = id;
  rep.anchor = anchor;
  rep.estimated = estimated;
  if (!available) {
    rep.value = 1.0;
    rep.unclipped = 1.0;
    rep.validity = "guarantee unavailable at this n; bound reported as 1";
    rep.validity_holds = false;
    return rep;
  }
  rep.unclipped = std::sqrt(m * m / n * r);
  rep.value = std::min(1.0, rep.unclipped);
  rep.validity = "n even";
  if (estimated && r > 0.0) rep.std_error = rep.unclipped * 0.5 * r_std_error / r;
  return rep;
}

}  // namespace detail

// Whole-vector shuffle: learn on rows 1..n/2, draw m rows from the plug-in
// and shuffle them into rows n/2+1..n.
inline AmplifierOutput shuffle_amplify_general(const Dataset& data, const Learner& learner,
                                               std::int64_t m, Rng& rng) {
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  const std::size_t n = data.rows();
  detail::require_even_split(n, "shuffle_amplify_general");
  const std::size_t half = n / 2;
  const std::size_t pool_size = half + static_cast<std::size_t>(m);
  AmplifierOutput out;
  out.method = std::string("shuffle_general_") + learner_name(learner.kind);
  out.samples.family = data.family;
  out.samples.provenance = "amplify:" + out.method;

  double r = 0.0;
  bool available = true;
  bool estimated = false;
  double r_se = 0.0;
  if (is_symbolic(data.family.kind)) {
    const std::vector<int> train(data.symbols.begin(), data.symbols.begin() + static_cast<long>(half));
    const Plugin plugin = fit_symbols(learner, train);
    std::vector<int> pool(data.symbols.begin() + static_cast<long>(half), data.symbols.end());
    for (std::int64_t i = 0; i < m; ++i) pool.push_back(draw_symbol(plugin, rng));
    shuffle_in_place(rng, pool);
    out.samples.symbols = train;
    out.samples.symbols.insert(out.samples.symbols.end(), pool.begin(), pool.end());
    const Chi2Guarantee g = chi2_guarantee(learner, static_cast<std::int64_t>(half));
    r = g.value;
    available = g.available;
    estimated = g.estimated;
    r_se = g.std_error;
  } else {
    const Eigen::Index d = data.values.cols();
    const Plugin plugin = fit_columns(learner, data.values.topRows(static_cast<Eigen::Index>(half)));
    Matrix pool(static_cast<Eigen::Index>(pool_size), d);
    pool.topRows(static_cast<Eigen::Index>(half)) = data.values.bottomRows(static_cast<Eigen::Index>(half));
    for (std::int64_t i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        pool(static_cast<Eigen::Index>(half) + i, j) = draw_coordinate(plugin, j, rng);
    const auto perm = random_permutation(rng, pool_size);
    Matrix x(static_cast<Eigen::Index>(n) + m, d);
    x.topRows(static_cast<Eigen::Index>(half)) = data.values.topRows(static_cast<Eigen::Index>(half));
    for (std::size_t i = 0; i < pool_size; ++i)
      x.row(static_cast<Eigen::Index>(half + i)) = pool.row(static_cast<Eigen::Index>(perm[i]));
    out.samples.values = std::move(x);
    // Joint guarantee of independent coordinates: prod (1 + r_j) - 1.
    const std::vector<Learner> per(static_cast<std::size_t>(d), learner);
    double log_prod = 0.0;
    double var_log = 0.0;
    for (const Chi2Guarantee& g : coordinate_guarantees(per, static_cast<std::int64_t>(half))) {
      available = available && g.available;
      estimated = estimated || g.estimated;
      log_prod += std::log1p(g.value);
      var_log += std::pow(g.std_error / (1.0 + g.value), 2);
    }
    r = std::expm1(log_prod);
    r_se = (1.0 + r) * std::sqrt(var_log);
  }
  out.samples.seed = rng.state();
  out.bound = detail::shuffle_report(static_cast<double>(n), static_cast<double>(m), r, available,
                                     estimated, r_se, formula::kShuffleGeneral,
                                     "whole-vector shuffle: TV <= sqrt(m^2/n r(n/2))");
  return out;
}

// Coordinatewise shuffle with an independent permutation per coordinate.
inline AmplifierOutput shuffle_amplify_product(const Dataset& data,
                                               const std::vector<Learner>& learners,
                                               std::int64_t m, Rng& rng) {
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  require(!is_symbolic(data.family.kind), ErrorCode::kValidation,
          "shuffle_amplify_product needs a real-valued product family");
  const auto n = static_cast<std::size_t>(data.values.rows());
  detail::require_even_split(n, "shuffle_amplify_product");
  const Eigen::Index d = data.values.cols();
  require(static_cast<Eigen::Index>(learners.size()) == d, ErrorCode::kValidation,
          "need one learner per coordinate (" + std::to_string(d) + "), got " +
              std::to_string(learners.size()));
  const auto half = static_cast<Eigen::Index>(n / 2);
  const Eigen::Index pool_size = half + m;
  Matrix x(static_cast<Eigen::Index>(n) + m, d);
  x.topRows(half) = data.values.topRows(half);
  const std::uint64_t key = rng.next_u64();
  std::vector<double> column(static_cast<std::size_t>(pool_size));
  for (Eigen::Index j = 0; j < d; ++j) {
    Rng coord(key, static_cast<std::uint64_t>(j));
    const Plugin plugin = fit_columns(learners[static_cast<std::size_t>(j)], data.values.col(j).head(half));
    for (Eigen::Index i = 0; i < half; ++i) column[static_cast<std::size_t>(i)] = data.values(half + i, j);
    for (Eigen::Index i = 0; i < m; ++i)
      column[static_cast<std::size_t>(half + i)] = draw_coordinate(plugin, 0, coord);
    shuffle_in_place(coord, column);
    for (Eigen::Index i = 0; i < pool_size; ++i) x(half + i, j) = column[static_cast<std::size_t>(i)];
  }

  AmplifierOutput out;
  out.method = "shuffle_product";
  out.samples.family = data.family;
  out.samples.values = std::move(x);
  out.samples.seed = rng.state();
  out.samples.provenance = "amplify:" + out.method;
  double total = 0.0;
  double var = 0.0;
  bool available = true;
  bool estimated = false;
  for (const Chi2Guarantee& g : coordinate_guarantees(learners, half)) {
    available = available && g.available;
    estimated = estimated || g.estimated;
    total += g.value;
    var += g.std_error * g.std_error;
  }
  out.bound = detail::shuffle_report(static_cast<double>(n), static_cast<double>(m), total,
                                     available, estimated, std::sqrt(var),
                                     formula::kShuffleProduct,
                                     "coordinatewise shuffle: TV <= sqrt(m^2/n sum_j r_j(n/2))");
  return out;
}

}  // namespace sampamp

#endif  // SAMPAMP_AMPLIFY_SHUFFLE_HPP_
