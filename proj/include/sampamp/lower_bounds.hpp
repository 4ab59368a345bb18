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

#ifndef SAMPAMP_LOWER_BOUNDS_HPP_
#define SAMPAMP_LOWER_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sampamp/divergences.hpp"
#include "sampamp/error.hpp"
#include "sampamp/families.hpp"
#include "sampamp/mc.hpp"
#include "sampamp/numerics.hpp"

namespace sampamp {

// P(sum_j Bern(p_j) <= k) by the standard convolution recursion.
inline double poisson_binomial_cdf(std::int64_t k, const std::vector<double>& p) {
  if (k < 0) return 0.0;
  const auto d = static_cast<std::int64_t>(p.size());
  if (k >= d) return 1.0;
  std::vector<double> pmf(p.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t s = j + 1; s > 0; --s) pmf[s] = pmf[s] * (1.0 - p[j]) + pmf[s - 1] * p[j];
    pmf[0] *= 1.0 - p[j];
  }
  double sum = 0.0;
  for (std::int64_t s = 0; s <= k; ++s) sum += pmf[static_cast<std::size_t>(s)];
  return std::min(1.0, sum);
}

struct VotingGap {
  double rb_n_lower = 0.0;   // lower bound on the Bayes risk with n samples
  double rb_nm_upper = 0.0;  // upper bound on the Bayes risk with n+m samples
  double gap = 0.0;
  std::vector<double> alpha;
  double alpha_mean = 0.0;
  double beta = 0.0;               // beta / sqrt(d) is the smallest half-gap
  std::int64_t threshold = 0;      // loss when #correct <= threshold
  double binomial_lower = 0.0;     // equal-parameter forms, valid when
  double binomial_upper = 0.0;     // hoeffding_applies holds
  bool hoeffding_applies = false;  // d >= 4 / beta^2
};

// Voting test: per-coordinate Bayes tests under a uniform two-point prior,
// unit loss when at most d/2 + sum(alpha)/2 coordinates are correct. The
// Bernoulli sums are evaluated exactly, so no equal-parameter relaxation is
// needed; the binomial forms are reported alongside.
inline VotingGap voting_bayes_gap(const std::vector<double>& tv_n, const std::vector<double>& tv_nm) {
  require(!tv_n.empty() && tv_n.size() == tv_nm.size(), ErrorCode::kValidation,
          "voting_bayes_gap needs matching nonempty TV vectors");
  const std::size_t d = tv_n.size();
  VotingGap out;
  out.alpha.resize(d);
  double half_gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d; ++j) {
    require(tv_n[j] > 0.0 && tv_n[j] < 1.0 && tv_nm[j] > 0.0 && tv_nm[j] < 1.0,
            ErrorCode::kValidation, "TV values must lie in (0,1)");
    require(tv_n[j] <= tv_nm[j], ErrorCode::kValidation,
            "TV at n must not exceed TV at n+m (coordinate " + std::to_string(j + 1) + ")");
    out.alpha[j] = 0.5 * (tv_n[j] + tv_nm[j]);
    half_gap = std::min(half_gap, 0.5 * (tv_nm[j] - tv_n[j]));
  }
  const double dd = static_cast<double>(d);
  double alpha_sum = 0.0;
  for (double a : out.alpha) alpha_sum += a;
  out.alpha_mean = alpha_sum / dd;
  out.beta = half_gap * std::sqrt(dd);
  out.threshold = static_cast<std::int64_t>(std::floor(0.5 * dd + 0.5 * alpha_sum + 1e-12));
  std::vector<double> p_lo(d);
  std::vector<double> p_hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    p_lo[j] = std::clamp(0.5 * (1.0 + out.alpha[j]) - 0.5 * half_gap, 0.0, 1.0);
    p_hi[j] = std::clamp(0.5 * (1.0 + out.alpha[j]) + 0.5 * half_gap, 0.0, 1.0);
  }
  out.rb_n_lower = poisson_binomial_cdf(out.threshold, p_lo);
  out.rb_nm_upper = poisson_binomial_cdf(out.threshold, p_hi);
  out.gap = std::max(0.0, out.rb_n_lower - out.rb_nm_upper);
  const auto binom_k =
      static_cast<std::int64_t>(std::floor(0.5 * (1.0 + out.alpha_mean) * dd + 1e-12));
  const auto di = static_cast<std::int64_t>(d);
  out.binomial_lower =
      binomial_cdf(binom_k, di, std::clamp(0.5 * (1.0 + out.alpha_mean) - 0.5 * half_gap, 0.0, 1.0));
  out.binomial_upper =
      binomial_cdf(binom_k, di, std::clamp(0.5 * (1.0 + out.alpha_mean) + 0.5 * half_gap, 0.0, 1.0));
  out.hoeffding_applies = out.beta > 0.0 && dd >= 4.0 / (out.beta * out.beta);
  return out;
}

struct TwoPoint {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double h2 = 0.0;
};

// Default search interval [theta_minus, far end] per coordinate family.
inline std::pair<double, double> default_search_interval(const ScalarFamily& f) {
  switch (f.kind) {
    case ScalarKind::kGaussianUnit: return {0.0, 20.0};
    case ScalarKind::kPoisson: return {1.0, 100.0};
    case ScalarKind::kExponential: return {1.0, 100.0};
    case ScalarKind::kBernoulli: return {0.5, 1.0};
    case ScalarKind::kLogistic: return {0.0, 50.0};
    case ScalarKind::kPoissonPair: return {-1.0 / f.aux, 1.0 / f.aux};
  }
  return {0.0, 1.0};
}

// Fixes theta_minus at the interval start and bisects theta_plus toward
// H^2 = 3/(20n), the middle of [1/(10n), 1/(5n)].
inline TwoPoint hellinger_two_point(const ScalarFamily& f, std::int64_t n, double lo, double hi) {
  require(n >= 1, ErrorCode::kDomain, "n must be >= 1");
  require(hi > lo, ErrorCode::kDomain, "search interval must have positive length");
  const double dn = static_cast<double>(n);
  const double low = 1.0 / (10.0 * dn);
  const double high = 1.0 / (5.0 * dn);
  const double target = 3.0 / (20.0 * dn);
  const double reach = hellinger2_1d(f, lo, hi);
  require(reach >= low, ErrorCode::kAssumptionFailure,
          "largest H^2 on the interval is " + std::to_string(reach) + " < 1/(10n) = " +
              std::to_string(low) + "; the two-point Hellinger condition cannot hold");
  double a = lo;
  double b = hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (hellinger2_1d(f, lo, mid) < target) {
      a = mid;
    } else {
      b = mid;
    }
  }
  TwoPoint tp;
  tp.theta_minus = lo;
  tp.theta_plus = b;
  tp.h2 = hellinger2_1d(f, lo, b);
  require(tp.h2 >= low && tp.h2 <= high && tp.theta_plus != tp.theta_minus,
          ErrorCode::kAssumptionFailure, "bisection did not land in [1/(10n), 1/(5n)]");
  return tp;
}

inline TwoPoint hellinger_two_point(const ScalarFamily& f, std::int64_t n) {
  const auto [lo, hi] = default_search_interval(f);
  return hellinger_two_point(f, n, lo, hi);
}

// Proof constants for the universal product bound.
namespace certificate_constants {
inline constexpr double kEps1Low = 0.09;     // TV at n is at least this
inline constexpr double kEps1 = 0.6;         // TV at n is at most this
inline constexpr double kEps2 = 0.86;        // TV at 20n is at least this
inline constexpr double kEps2High = 0.99995; // TV at 20n is at most this
inline constexpr double kSlackSigmas = 3.0;
}  // namespace certificate_constants

struct LowerCertificate {
  ScalarFamily family;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t reps = 0;
  double c = 0.0;  // m sqrt(d) / n
  TwoPoint points;
  std::vector<std::int64_t> grid;
  std::vector<McEstimate> tv_grid;
  std::int64_t n_j = 0;  // chosen size, identical for all coordinates
  McEstimate tv_nj;      // fresh estimates at n_j and n_j + m
  McEstimate tv_njm;
  double tv_nj_upper = 0.0;   // estimate + 3 stderr
  double tv_njm_lower = 0.0;  // estimate - 3 stderr
  double required_increment = 0.0;
  double observed_increment = 0.0;  // tv_njm_lower - tv_nj_upper
  bool meets_required_increment = false;
  bool tv_n_at_least_eps1_low = false;
  bool tv_20n_at_most_eps2_high = false;
  bool tv_n_at_most_eps1 = false;
  bool tv_20n_at_least_eps2 = false;
  VotingGap voting;
  double gap = 0.0;
  bool inconclusive = true;
  RngState seed;
};

// Universal product lower bound for d identical coordinates. Grid estimates
// choose n_j; TV at (n_j, n_j+m) is then re-estimated on an independent
// stream and the voting gap is computed from conservative endpoints.
inline LowerCertificate product_lower_certificate(const ScalarFamily& f, std::int64_t n,
                                                  std::int64_t m, std::int64_t d,
                                                  std::int64_t reps, Rng& rng) {
  namespace k = certificate_constants;
  require(n >= 1 && m >= 1 && d >= 1, ErrorCode::kDomain, "need n, m, d >= 1");
  require(reps >= 100, ErrorCode::kDomain, "need at least 100 replicates");
  LowerCertificate cert;
  cert.family = f;
  cert.n = n;
  cert.m = m;
  cert.d = d;
  cert.reps = reps;
  cert.seed = rng.state();
  cert.c = static_cast<double>(m) * std::sqrt(static_cast<double>(d)) / static_cast<double>(n);
  cert.points = hellinger_two_point(f, n);

  const std::int64_t steps = (19 * n + m - 1) / m;  // ceil(19n/m)
  cert.required_increment = (k::kEps2 - k::kEps1) / static_cast<double>(steps);
  // Candidate pairs (t, t+m): t = n + k m for k < steps - 1, then 20n - m.
  std::vector<std::int64_t> starts;
  if (m >= 19 * n) {
    starts.push_back(n);
  } else {
    for (std::int64_t s = 0; s + 1 < steps; ++s) starts.push_back(n + s * m);
    starts.push_back(20 * n - m);
  }
  std::vector<std::int64_t> sizes = {n, 20 * n};
  for (std::int64_t t : starts) {
    sizes.push_back(t);
    sizes.push_back(t + m);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  cert.grid = sizes;

  Rng scan = rng.substream(0);
  Rng confirm = rng.substream(1);
  cert.tv_grid = tv_product_mc_path(f, cert.points.theta_plus, cert.points.theta_minus, sizes,
                                    reps, scan);
  auto at = [&](std::int64_t t) {
    const auto it = std::lower_bound(sizes.begin(), sizes.end(), t);
    return cert.tv_grid[static_cast<std::size_t>(it - sizes.begin())];
  };
  const McEstimate tv_n = at(n);
  const McEstimate tv_20n = at(20 * n);
  cert.tv_n_at_least_eps1_low = tv_n.estimate + k::kSlackSigmas * tv_n.std_error >= k::kEps1Low;
  cert.tv_n_at_most_eps1 = tv_n.estimate - k::kSlackSigmas * tv_n.std_error <= k::kEps1;
  cert.tv_20n_at_most_eps2_high =
      tv_20n.estimate - k::kSlackSigmas * tv_20n.std_error <= k::kEps2High;
  cert.tv_20n_at_least_eps2 = tv_20n.estimate + k::kSlackSigmas * tv_20n.std_error >= k::kEps2;

  double best = -1.0;
  for (std::int64_t t : starts) {
    const double inc = at(t + m).estimate - at(t).estimate;
    if (inc > best) {
      best = inc;
      cert.n_j = t;
    }
  }
  const auto fresh = tv_product_mc_path(f, cert.points.theta_plus, cert.points.theta_minus,
                                        {cert.n_j, cert.n_j + m}, reps, confirm);
  cert.tv_nj = fresh[0];
  cert.tv_njm = fresh[1];
  cert.tv_nj_upper = cert.tv_nj.estimate + k::kSlackSigmas * cert.tv_nj.std_error;
  cert.tv_njm_lower = cert.tv_njm.estimate - k::kSlackSigmas * cert.tv_njm.std_error;
  cert.observed_increment = cert.tv_njm_lower - cert.tv_nj_upper;
  cert.meets_required_increment = cert.observed_increment >= cert.required_increment;
  if (cert.observed_increment <= 0.0 || cert.tv_nj_upper <= 0.0 || cert.tv_njm_lower >= 1.0) {
    cert.inconclusive = true;
    cert.gap = 0.0;
    return cert;
  }
  const std::vector<double> lo(static_cast<std::size_t>(d), cert.tv_nj_upper);
  const std::vector<double> hi(static_cast<std::size_t>(d), cert.tv_njm_lower);
  cert.voting = voting_bayes_gap(lo, hi);
  cert.gap = cert.voting.gap;
  cert.inconclusive = !(cert.gap > 0.0);
  return cert;
}

// p_d(z) at several z from one set of draws per replicate (common random
// numbers): E[1 / (1 + sum_{j>=2} exp(z Z_j - z (z + Z_1)))].
inline std::vector<McEstimate> pd_curve_multi(std::int64_t d, const std::vector<double>& zs,
                                              std::int64_t reps, Rng& rng) {
  require(d >= 2, ErrorCode::kDomain, "p_d needs d >= 2");
  require(reps >= 2, ErrorCode::kDomain, "need at least 2 replicates");
  std::vector<RunningStats> acc(zs.size());
  std::vector<double> others(static_cast<std::size_t>(d - 1));
  std::vector<double> sums(zs.size());
  for (std::int64_t r = 0; r < reps; ++r) {
    const double z1 = rng.normal();
    for (auto& x : others) x = rng.normal();
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const double z = zs[k];
      const double lead = z * (z + z1);
      double s = 0.0;
      for (double x : others) s += std::exp(z * x - lead);
      sums[k] = s;
    }
    for (std::size_t k = 0; k < zs.size(); ++k) acc[k].add(1.0 / (1.0 + sums[k]));
  }
  std::vector<McEstimate> out;
  for (const auto& a : acc) out.push_back(a.estimate());
  return out;
}

inline McEstimate pd_curve(std::int64_t d, double z, std::int64_t reps, Rng& rng) {
  return pd_curve_multi(d, {z}, reps, rng).front();
}

struct SparseFloor {
  double gap = 0.0;  // conservative, after 3-stderr slack
  double t = 0.0;
  double z_n = 0.0;
  double z_nm = 0.0;
  std::int64_t block_dim = 0;  // d0 = floor(d/s)
  std::int64_t threshold = 0;  // N
  McEstimate p_n;
  McEstimate p_nm;
};

// Block construction for the sparse Gaussian model: s blocks of d0 = d/s
// coordinates, one planted spike per block. The grid over t is scanned on one
// stream and the chosen t is re-estimated on another.
inline SparseFloor sparse_amplification_floor(std::int64_t s, std::int64_t d, std::int64_t n,
                                              std::int64_t m, std::int64_t reps, Rng& rng,
                                              double grid_half_width = 3.0,
                                              double grid_step = 0.25) {
  require(s >= 1 && 2 * s < d, ErrorCode::kDomain, "sparse floor needs 1 <= s < d/2");
  require(n >= 1 && m >= 0, ErrorCode::kDomain, "need n >= 1 and m >= 0");
  SparseFloor out;
  out.block_dim = d / s;
  if (m == 0) return out;
  const double ratio = std::sqrt(static_cast<double>(n + m) / static_cast<double>(n));
  const double center = std::sqrt(2.0 * std::log(static_cast<double>(out.block_dim)));
  std::vector<double> zs;
  for (double z = std::max(0.0, center - grid_half_width); z <= center + grid_half_width + 1e-12;
       z += grid_step) {
    zs.push_back(z);
    zs.push_back(z * ratio);
  }
  auto evaluate = [&](const McEstimate& pa, const McEstimate& pb, std::int64_t* threshold) {
    const double sd = static_cast<double>(s);
    const auto nn = static_cast<std::int64_t>(
        std::ceil(sd * (1.0 - pa.estimate) / 2.0 + sd * (1.0 - pb.estimate) / 2.0 - 1e-12));
    if (threshold) *threshold = nn;
    const double qa = std::clamp(1.0 - (pa.estimate + 3.0 * pa.std_error), 0.0, 1.0);
    const double qb = std::clamp(1.0 - (pb.estimate - 3.0 * pb.std_error), 0.0, 1.0);
    return binomial_sf(nn, s, qa) - binomial_sf(nn, s, qb);
  };
  Rng scan = rng.substream(0);
  Rng confirm = rng.substream(1);
  const auto est = pd_curve_multi(out.block_dim, zs, reps, scan);
  double best = -1.0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k + 1 < zs.size(); k += 2) {
    const double g = evaluate(est[k], est[k + 1], nullptr);
    if (g > best) {
      best = g;
      best_k = k;
    }
  }
  out.z_n = zs[best_k];
  out.z_nm = zs[best_k + 1];
  out.t = out.z_n / std::sqrt(static_cast<double>(n));
  const auto fresh = pd_curve_multi(out.block_dim, {out.z_n, out.z_nm}, reps, confirm);
  out.p_n = fresh[0];
  out.p_nm = fresh[1];
  out.gap = std::max(0.0, evaluate(out.p_n, out.p_nm, &out.threshold));
  return out;
}

// Stein-loss moments of the invariant estimator L D L^T.
inline std::vector<double> default_stein_weights(std::int64_t n, std::int64_t d) {
  require(n >= d && d >= 1, ErrorCode::kDomain, "default Stein weights need n >= d >= 1");
  std::vector<double> w(static_cast<std::size_t>(d));
  for (std::int64_t j = 1; j <= d; ++j)
    w[static_cast<std::size_t>(j - 1)] = 1.0 / static_cast<double>(n + d + 1 - 2 * j);
  return w;
}

namespace detail {
inline void require_stein(std::int64_t n, std::int64_t d, const std::vector<double>& w) {
  require(n >= d && d >= 1, ErrorCode::kDomain, "Stein moments need n >= d >= 1");
  require(static_cast<std::int64_t>(w.size()) == d, ErrorCode::kDomain, "need d weights");
  for (double x : w) require(x > 0.0, ErrorCode::kDomain, "Stein weights must be > 0");
}
}  // namespace detail

inline double stein_mean(std::int64_t n, std::int64_t d, const std::vector<double>& w) {
  detail::require_stein(n, d, w);
  double sum = 0.0;
  for (std::int64_t j = 1; j <= d; ++j) {
    const double l = w[static_cast<std::size_t>(j - 1)];
    sum += static_cast<double>(n + d + 1 - 2 * j) * l - std::log(l) -
           (std::numbers::ln2 + digamma(0.5 * static_cast<double>(n - j + 1)));
  }
  return sum - static_cast<double>(d);
}

inline double stein_var(std::int64_t n, std::int64_t d, const std::vector<double>& w) {
  detail::require_stein(n, d, w);
  double sum = 0.0;
  for (std::int64_t j = 1; j <= d; ++j) {
    const double l = w[static_cast<std::size_t>(j - 1)];
    sum += 2.0 * static_cast<double>(n + d + 1 - 2 * j) * l * l - 4.0 * l +
           trigamma(0.5 * static_cast<double>(n + 1 - j));
  }
  return sum;
}

inline double stein_g(double u, double v) {
  require(u > 0.0 && v >= 0.0, ErrorCode::kDomain, "stein_g needs u > 0 and v >= 0");
  auto xlogx = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
  return 0.5 * (xlogx(u + 2.0 * v) + xlogx(u)) - xlogx(u + v);
}

inline double stein_h(double u) {
  require(u > 0.0, ErrorCode::kDomain, "stein_h needs u > 0");
  return u - std::log(u) - 1.0;
}

struct SteinMc {
  McEstimate mean;
  double variance = 0.0;
};

// Bartlett simulation: L_jj^2 ~ chi2_{n+1-j}, L_ij ~ N(0,1) for i > j, and
// loss = sum_j (lambda_j sum_{i>=j} L_ij^2 - log lambda_j - log L_jj^2 - 1).
inline SteinMc stein_mc(std::int64_t n, std::int64_t d, const std::vector<double>& w,
                        std::int64_t reps, Rng& rng) {
  detail::require_stein(n, d, w);
  require(reps >= 2, ErrorCode::kDomain, "need at least 2 replicates");
  RunningStats acc;
  for (std::int64_t r = 0; r < reps; ++r) {
    double loss = 0.0;
    for (std::int64_t j = 1; j <= d; ++j) {
      const double l = w[static_cast<std::size_t>(j - 1)];
      const double diag = sample_chi2(rng, static_cast<double>(n + 1 - j));
      double col = diag;
      for (std::int64_t i = j + 1; i <= d; ++i) {
        const double z = rng.normal();
        col += z * z;
      }
      loss += l * col - std::log(l) - std::log(diag) - 1.0;
    }
    acc.add(loss);
  }
  return {acc.estimate(), acc.variance()};
}

struct CovarianceGapReport {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t m = 0;
  double mean_n = 0.0;
  double g_n = 0.0;
  double mean_dev_n = 0.0;
  double mean_dev_bound = 0.0;  // 5d/n
  double sd_n = 0.0;
  double sd_bound = 0.0;        // 4d/n
  double mean_nm = 0.0;
  double g_nm = 0.0;
  double sd_nm = 0.0;
  double g_gap = 0.0;           // g(n+1-d, d) - g(n+m+1-d, d)
  double g_gap_floor = 0.0;     // m d^2 / (13 n^2)
  double slack = 0.0;
  bool bounds_hold = false;
  bool separated = false;       // g_gap > slack: m of order n/d is necessary
};

// Separation of the Stein loss at sizes n and n+m with default weights.
// Chebyshev at probability 0.9 contributes sqrt(10) standard deviations on
// each side.
inline CovarianceGapReport covariance_lower_gap(std::int64_t n, std::int64_t d, std::int64_t m) {
  require(d >= 1 && n >= 2 * d, ErrorCode::kValidation, "covariance_lower_gap needs n >= 2d");
  require(m >= 0, ErrorCode::kDomain, "m must be >= 0");
  CovarianceGapReport r;
  r.n = n;
  r.d = d;
  r.m = m;
  const double dn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const auto w_n = default_stein_weights(n, d);
  const auto w_nm = default_stein_weights(n + m, d);
  r.mean_n = stein_mean(n, d, w_n);
  r.g_n = stein_g(dn + 1.0 - dd, dd);
  r.mean_dev_n = std::fabs(r.mean_n - r.g_n);
  r.sd_n = std::sqrt(stein_var(n, d, w_n));
  r.mean_dev_bound = 5.0 * dd / dn;
  r.sd_bound = 4.0 * dd / dn;
  r.mean_nm = stein_mean(n + m, d, w_nm);
  r.g_nm = stein_g(static_cast<double>(n + m) + 1.0 - dd, dd);
  r.sd_nm = std::sqrt(stein_var(n + m, d, w_nm));
  r.g_gap = r.g_n - r.g_nm;
  r.g_gap_floor = static_cast<double>(m) * dd * dd / (13.0 * dn * dn);
  r.bounds_hold = r.mean_dev_n <= r.mean_dev_bound && r.sd_n <= r.sd_bound;
  const double chebyshev = std::sqrt(10.0);
  r.slack = r.mean_dev_n + std::fabs(r.mean_nm - r.g_nm) + chebyshev * (r.sd_n + r.sd_nm);
  r.separated = m > 0 && r.g_gap > r.slack;
  return r;
}

}  // namespace sampamp

#endif  // SAMPAMP_LOWER_BOUNDS_HPP_
