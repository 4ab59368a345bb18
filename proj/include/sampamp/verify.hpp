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

#ifndef SAMPAMP_VERIFY_HPP_
#define SAMPAMP_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "sampamp/amplify_shuffle.hpp"
#include "sampamp/amplify_sufficiency.hpp"
#include "sampamp/error.hpp"
#include "sampamp/families.hpp"
#include "sampamp/mc.hpp"
#include "sampamp/numerics.hpp"

namespace sampamp {

// Sufficiency amplifiers whose output statistic equals the input statistic.
inline bool preserves_statistic(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianCov:
    case FamilyKind::kGaussianMeanCov:
    case FamilyKind::kProductExponential:
    case FamilyKind::kUniformRect:
      return true;
    default:
      return false;
  }
}

// TV between the laws of T_n and T_{n+m} by E_{T ~ T_n}[(1 - q(T)/p(T))_+].
// This is the exact error of the identity-map sufficiency amplifier.
inline McEstimate tv_mc_suffstat(const FamilySpec& f, const ParamPoint& p, std::int64_t n,
                                 std::int64_t m, std::int64_t reps, Rng& rng,
                                 const std::string& method = "sufficiency") {
  require(method.rfind("shuffle", 0) != 0, ErrorCode::kUnsupported,
          "shuffle amplifiers have no exact statistic reduction; only their bound is available");
  require(preserves_statistic(f.kind), ErrorCode::kUnsupported,
          std::string(family_name(f.kind)) + " has no identity-map sufficiency amplifier");
  require(n >= 1 && m >= 0, ErrorCode::kDomain, "need n >= 1 and m >= 0");
  require(reps >= 2, ErrorCode::kDomain, "need at least 2 replicates");
  if (m == 0) return {0.0, 0.0, reps};
  const SuffStatLaw law_n(f, p, n);
  const SuffStatLaw law_nm(f, p, n + m);
  RunningStats acc;
  for (std::int64_t r = 0; r < reps; ++r) {
    const SufficientStat t = law_n.sample(rng);
    const double log_ratio = law_nm.log_density(t) - law_n.log_density(t);
    acc.add(log_ratio < 0.0 ? -std::expm1(log_ratio) : 0.0);
  }
  return acc.estimate();
}

struct VerifierReport {
  std::string test;
  std::string family;
  int d = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string method;
  double level = 0.05;
  double rejection = 0.0;
  std::int64_t reps = 0;
  std::int64_t calibration_reps = 0;
  double tv_lower = 0.0;  // max(0, rejection - level)
  double std_error = 0.0;
  RngState seed;
  RngState calibration_stream;
  RngState evaluation_stream;
};

using DatasetSampler = std::function<Dataset(Rng&)>;

// Larger statistic means more evidence against genuine data; two-sided
// detectors also reject small values.
struct Detector {
  std::string name;
  bool two_sided = false;
  std::function<double(const Dataset&)> statistic;
};

inline Vector population_mean(const FamilySpec& f, const ParamPoint& p) {
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianMeanCov:
    case FamilyKind::kSparseGaussian:
      return p.mean;
    case FamilyKind::kProductExponential:
      return p.rate.cwiseInverse();
    case FamilyKind::kUniformRect:
      return 0.5 * (p.lower + p.upper);
    case FamilyKind::kProductPoisson:
      return p.rate;
    case FamilyKind::kPoissonizedDiscrete:
      return p.probs;
    case FamilyKind::kGaussianCov:
    case FamilyKind::kLowRankCov:
      return Vector::Zero(f.dim);
    default:
      fail(ErrorCode::kUnsupported, std::string(family_name(f.kind)) + " has no mean vector");
  }
}

namespace detail {

inline bool continuous_family(FamilyKind kind) {
  return !is_symbolic(kind) && kind != FamilyKind::kProductPoisson &&
         kind != FamilyKind::kPoissonizedDiscrete;
}

inline Vector symbol_counts(const FamilySpec& f, const std::vector<int>& symbols) {
  const int first = f.kind == FamilyKind::kDiscrete ? 1 : 0;
  const int size = f.kind == FamilyKind::kDiscrete ? f.dim : f.dim + 1;
  Vector counts = Vector::Zero(size);
  for (int s : symbols) {
    require(s >= first && s < first + size, ErrorCode::kValidation,
            "symbol " + std::to_string(s) + " outside the alphabet");
    counts(s - first) += 1.0;
  }
  return counts;
}

inline double neg_log_multinomial(const Vector& counts, const Vector& probs) {
  double total = 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < counts.size(); ++i) {
    if (counts(i) == 0.0) continue;
    if (probs(i) <= 0.0) return std::numeric_limits<double>::infinity();
    total += counts(i);
    s += counts(i) * std::log(probs(i)) - std::lgamma(counts(i) + 1.0);
  }
  return -(std::lgamma(total + 1.0) + s);
}

inline double duplicate_rows(const Matrix& x) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    auto& r = rows[static_cast<std::size_t>(i)];
    r.resize(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index j = 0; j < x.cols(); ++j) r[static_cast<std::size_t>(j)] = x(i, j);
  }
  std::sort(rows.begin(), rows.end());
  double dup = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i] == rows[i - 1]) dup += 1.0;
  return dup;
}

// Studentized gap between the last m rows and rows n/2+1..n, projected on
// the direction of the first-half mean error. Positions inside the pool are
// exchangeable for shuffled output, so only position-dependent fakes move it.
inline double block_mean_gap(const Matrix& x, std::int64_t n, std::int64_t m, const Vector& mu) {
  const Eigen::Index half = n / 2;
  const Vector v = x.topRows(half).colwise().mean().transpose() - mu;
  const double norm = v.norm();
  if (!(norm > 0.0)) return 0.0;
  const Eigen::Index pool = n - half + m;
  const Vector y = (x.bottomRows(pool).rowwise() - mu.transpose()) * (v / norm);
  const double mid = y.head(n - half).mean();
  const double last = y.tail(m).mean();
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / static_cast<double>(pool - 1);
  if (!(var > 0.0)) return 0.0;
  const double scale = std::sqrt(var * (1.0 / static_cast<double>(m) +
                                        1.0 / static_cast<double>(n - half)));
  return (last - mid) / scale;
}

}  // namespace detail

// Registered detectors applicable to (family, param) at total size n+m.
inline std::vector<Detector> default_detectors(const FamilySpec& f, const ParamPoint& p,
                                               std::int64_t n, std::int64_t m) {
  validate_param(f, p);
  require(n >= 1 && m >= 0, ErrorCode::kDomain, "need n >= 1 and m >= 0");
  std::vector<Detector> out;
  if (is_symbolic(f.kind)) {
    out.push_back({"suffstat_region", false, [f, p](const Dataset& x) {
                     return detail::neg_log_multinomial(detail::symbol_counts(f, x.symbols),
                                                        p.probs);
                   }});
    const bool top = f.kind == FamilyKind::kTopElementDiscrete;
    out.push_back({"new_symbol", false, [f, p, top](const Dataset& x) {
                     const int first = f.kind == FamilyKind::kDiscrete ? 1 : 0;
                     double outside = 0.0;
                     for (int s : x.symbols)
                       if (p.probs(s - first) <= 0.0) outside += 1.0;
                     if (!top) return 2.0 * outside;
                     // Rest of the support-membership loss: symbol 0 or a repeat.
                     std::vector<int> sorted = x.symbols;
                     std::sort(sorted.begin(), sorted.end());
                     const bool repeat = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
                     const bool zero = !sorted.empty() && sorted.front() == 0;
                     return 2.0 * outside + ((repeat || zero) ? 1.0 : 0.0);
                   }});
    return out;
  }
  if (has_sufficient_stat(f.kind)) {
    try {
      const auto law = std::make_shared<SuffStatLaw>(f, p, n + m);
      out.push_back({"suffstat_region", false, [f, law](const Dataset& x) {
                       return -law->log_density(sufficient_stat(f, x));
                     }});
    } catch (const Error&) {
      // No density at this size (for example a singular Wishart); skip.
    }
  }
  if (detail::continuous_family(f.kind)) {
    out.push_back({"duplicate", false,
                   [](const Dataset& x) { return detail::duplicate_rows(x.values); }});
  }
  if (n >= 2 && n % 2 == 0 && m >= 1 && n / 2 + m >= 2) {
    const Vector mu = population_mean(f, p);
    out.push_back({"block_mean", true, [n, m, mu](const Dataset& x) {
                     return detail::block_mean_gap(x.values, n, m, mu);
                   }});
  }
  if (f.kind == FamilyKind::kUniformRect) {
    out.push_back({"support_range", false, [p](const Dataset& x) {
                     double outside = 0.0;
                     for (Eigen::Index i = 0; i < x.values.rows(); ++i) {
                       const auto row = x.values.row(i).transpose().array();
                       if ((row < p.lower.array()).any() || (row > p.upper.array()).any())
                         outside += 1.0;
                     }
                     return outside;
                   }});
  }
  return out;
}

// Upper-tail rejection rule at level alpha with randomization on ties, so
// discrete statistics reach the level exactly on the calibration sample.
struct TailRule {
  double threshold = std::numeric_limits<double>::infinity();
  double tie_weight = 0.0;

  double reject(double s) const {
    if (s > threshold) return 1.0;
    return s == threshold ? tie_weight : 0.0;
  }
};

inline TailRule calibrate_upper_tail(std::vector<double> values, double alpha) {
  require(!values.empty(), ErrorCode::kDomain, "calibration sample is empty");
  for (double& v : values)
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
  std::sort(values.begin(), values.end());
  const double pos = (1.0 - alpha) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  TailRule rule;
  if (lo + 1 >= values.size() || frac == 0.0 || values[lo] == values[lo + 1] ||
      !std::isfinite(values[lo + 1])) {
    rule.threshold = values[lo];
  } else {
    rule.threshold = values[lo] + frac * (values[lo + 1] - values[lo]);
  }
  const double total = static_cast<double>(values.size());
  const auto gt = static_cast<double>(
      values.end() - std::upper_bound(values.begin(), values.end(), rule.threshold));
  const auto eq = static_cast<double>(
      std::upper_bound(values.begin(), values.end(), rule.threshold) -
      std::lower_bound(values.begin(), values.end(), rule.threshold));
  if (eq > 0.0) rule.tie_weight = std::clamp((alpha - gt / total) / (eq / total), 0.0, 1.0);
  return rule;
}

struct BatteryConfig {
  FamilySpec family;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string method;
  double level = 0.05;
  std::int64_t reps = 10000;
  std::int64_t calibration_reps = 10000;
};

// Calibrates every detector on genuine draws from substream 0 and evaluates
// the candidate on substream 1; the two phases never share random numbers.
inline std::vector<VerifierReport> detector_battery(const DatasetSampler& candidate,
                                                    const DatasetSampler& genuine,
                                                    const std::vector<Detector>& detectors,
                                                    const BatteryConfig& cfg, Rng& rng) {
  require(cfg.reps >= 100 && cfg.calibration_reps >= 100, ErrorCode::kValidation,
          "detector calibration needs at least 100 replicates per phase");
  require(cfg.level > 0.0 && cfg.level < 1.0, ErrorCode::kDomain, "level must lie in (0,1)");
  require(!detectors.empty(), ErrorCode::kValidation, "no detectors registered");
  Rng calib = rng.substream(0);
  Rng eval = rng.substream(1);
  require(calib.state().stream != eval.state().stream, ErrorCode::kValidation,
          "calibration and evaluation streams must differ");
  const std::size_t k = detectors.size();
  std::vector<std::vector<double>> null_stats(k);
  for (auto& v : null_stats) v.reserve(static_cast<std::size_t>(cfg.calibration_reps));
  for (std::int64_t r = 0; r < cfg.calibration_reps; ++r) {
    const Dataset x = genuine(calib);
    for (std::size_t i = 0; i < k; ++i) null_stats[i].push_back(detectors[i].statistic(x));
  }
  std::vector<TailRule> upper(k);
  std::vector<TailRule> lower(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double alpha = detectors[i].two_sided ? 0.5 * cfg.level : cfg.level;
    upper[i] = calibrate_upper_tail(null_stats[i], alpha);
    if (detectors[i].two_sided) {
      std::vector<double> neg(null_stats[i].size());
      std::transform(null_stats[i].begin(), null_stats[i].end(), neg.begin(),
                     [](double s) { return -s; });
      lower[i] = calibrate_upper_tail(std::move(neg), alpha);
    }
  }
  std::vector<RunningStats> acc(k);
  for (std::int64_t r = 0; r < cfg.reps; ++r) {
    const Dataset x = candidate(eval);
    for (std::size_t i = 0; i < k; ++i) {
      const double s = detectors[i].statistic(x);
      double rej = upper[i].reject(s);
      if (detectors[i].two_sided) rej += lower[i].reject(-s);
      acc[i].add(std::min(1.0, rej));
    }
  }
  std::vector<VerifierReport> out;
  for (std::size_t i = 0; i < k; ++i) {
    VerifierReport rep;
    rep.test = detectors[i].name;
    rep.family = family_name(cfg.family.kind);
    rep.d = cfg.family.dim;
    rep.n = cfg.n;
    rep.m = cfg.m;
    rep.method = cfg.method;
    rep.level = cfg.level;
    rep.rejection = acc[i].mean();
    rep.std_error = acc[i].std_error();
    rep.reps = cfg.reps;
    rep.calibration_reps = cfg.calibration_reps;
    rep.tv_lower = std::clamp(rep.rejection - cfg.level, 0.0, 1.0);
    rep.seed = rng.state();
    rep.calibration_stream = rng.substream(0).state();
    rep.evaluation_stream = rng.substream(1).state();
    out.push_back(rep);
  }
  return out;
}

// Genuine (n+m)-sample draws.
inline DatasetSampler genuine_sampler(const FamilySpec& f, const ParamPoint& p, std::int64_t size) {
  return [f, p, size](Rng& rng) { return sample(f, p, static_cast<std::size_t>(size), rng); };
}

// Naive baseline: appends m rows copied from the observed sample.
inline Dataset copy_append(const Dataset& data, std::int64_t m, Rng& rng) {
  require(data.rows() >= 1 && m >= 0, ErrorCode::kDomain, "copy_append needs data and m >= 0");
  Dataset out = data;
  out.provenance = "baseline:copy_append";
  if (is_symbolic(data.family.kind)) {
    for (std::int64_t i = 0; i < m; ++i)
      out.symbols.push_back(data.symbols[rng.uniform_index(data.symbols.size())]);
    return out;
  }
  const Eigen::Index n = data.values.rows();
  out.values.conservativeResize(n + m, Eigen::NoChange);
  for (Eigen::Index i = 0; i < m; ++i)
    out.values.row(n + i) = data.values.row(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n))));
  return out;
}

// Naive baseline: fits the learner on rows 1..n/2 and appends m plug-in draws
// after the original rows, with no shuffling.
inline Dataset plain_append(const Dataset& data, const Learner& learner, std::int64_t m, Rng& rng) {
  detail::require_real_data(data, "plain_append");
  const Eigen::Index n = data.values.rows();
  require(n >= 2 && m >= 0, ErrorCode::kDomain, "plain_append needs n >= 2 and m >= 0");
  const Plugin plugin = fit_columns(learner, data.values.topRows(n / 2));
  Dataset out = data;
  out.provenance = "baseline:plain_append";
  out.values.conservativeResize(n + m, Eigen::NoChange);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < data.values.cols(); ++j)
      out.values(n + i, j) = draw_coordinate(plugin, j, rng);
  return out;
}

// Naive baseline for symbolic data: appends m symbols uniform over 1..d.
inline Dataset uniform_fake_append(const Dataset& data, std::int64_t m, Rng& rng) {
  require(is_symbolic(data.family.kind), ErrorCode::kValidation,
          "uniform_fake_append needs symbolic data");
  Dataset out = data;
  out.provenance = "baseline:uniform_fake_append";
  for (std::int64_t i = 0; i < m; ++i)
    out.symbols.push_back(1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(data.family.dim))));
  return out;
}

// Draw from the blocked prior used for the top-element lower bound: mass t on
// symbol 0 and 1-t spread evenly over a uniformly random subset of 1..d of
// size max(1, d/100).
inline ParamPoint top_element_prior_draw(const FamilySpec& f, Rng& rng) {
  require(f.kind == FamilyKind::kTopElementDiscrete, ErrorCode::kValidation,
          "prior draw is defined for TopElementDiscrete");
  validate_family(f);
  const int block = std::max(1, f.dim / 100);
  auto perm = random_permutation(rng, static_cast<std::size_t>(f.dim));
  ParamPoint p;
  p.probs = Vector::Zero(f.dim + 1);
  p.probs(0) = f.top_mass;
  for (int i = 0; i < block; ++i)
    p.probs(1 + static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)])) =
        (1.0 - f.top_mass) / block;
  return p;
}

// Truth and plug-in pairs with closed-form chi^2(plug-in, truth).
enum class Chi2Model {
  kGaussianMean,   // N(theta, 1), sample mean
  kUniform,        // U(0, theta), [min, max]
  kExponential,    // rate theta, n / sum
  kPoisson,        // mean theta, sample mean
  kDiscrete,       // probs, empirical frequencies
  kSoftThreshold,  // N(theta, 1), soft-thresholded mean at sqrt(c log n / n)
  kTopElement,     // point mass on symbol 0, truth has t = theta on it
};

struct Chi2Setup {
  Chi2Model model = Chi2Model::kGaussianMean;
  double theta = 0.0;
  Vector probs;
  double threshold_c = 0.0;
};

// One draw of chi^2(P_hat, P) from n samples.
inline double chi2_error_draw(const Chi2Setup& s, std::int64_t n, Rng& rng) {
  const double dn = static_cast<double>(n);
  const double inf = std::numeric_limits<double>::infinity();
  switch (s.model) {
    case Chi2Model::kGaussianMean: {
      const double delta = rng.normal() / std::sqrt(dn);
      return std::expm1(delta * delta);
    }
    case Chi2Model::kSoftThreshold: {
      const double mean = s.theta + rng.normal() / std::sqrt(dn);
      const double est = soft_threshold(mean, soft_threshold_level(s.threshold_c, std::max(dn, 2.0)));
      const double delta = est - s.theta;
      return std::expm1(delta * delta);
    }
    case Chi2Model::kUniform: {
      double lo = inf;
      double hi = -inf;
      for (std::int64_t i = 0; i < n; ++i) {
        const double x = s.theta * rng.uniform();
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      if (!(hi > lo)) return inf;
      const double ratio = s.theta / (hi - lo);
      return ratio * ratio - 1.0;
    }
    case Chi2Model::kExponential: {
      const double est = dn / sample_gamma(rng, dn, s.theta);
      if (2.0 * est <= s.theta) return inf;
      const double diff = est - s.theta;
      return diff * diff / (s.theta * (2.0 * est - s.theta));
    }
    case Chi2Model::kPoisson: {
      const double est = static_cast<double>(sample_poisson(rng, dn * s.theta)) / dn;
      const double diff = est - s.theta;
      return std::expm1(diff * diff / s.theta);
    }
    case Chi2Model::kDiscrete: {
      const auto cdf = detail::cumulative(s.probs);
      Vector counts = Vector::Zero(s.probs.size());
      for (std::int64_t i = 0; i < n; ++i) counts(detail::draw_symbol(rng, cdf, 0)) += 1.0;
      double chi2 = 0.0;
      for (Eigen::Index j = 0; j < s.probs.size(); ++j) {
        const double diff = counts(j) / dn - s.probs(j);
        if (s.probs(j) > 0.0) {
          chi2 += diff * diff / s.probs(j);
        } else if (counts(j) > 0.0) {
          return inf;
        }
      }
      return chi2;
    }
    case Chi2Model::kTopElement:
      return 1.0 / s.theta - 1.0;
  }
  return 0.0;
}

inline void validate_chi2_setup(const Chi2Setup& s) {
  switch (s.model) {
    case Chi2Model::kGaussianMean:
    case Chi2Model::kSoftThreshold:
      require(std::isfinite(s.theta), ErrorCode::kDomain, "theta must be finite");
      if (s.model == Chi2Model::kSoftThreshold)
        require(s.threshold_c > 0.0, ErrorCode::kDomain, "threshold constant must be > 0");
      break;
    case Chi2Model::kUniform:
    case Chi2Model::kExponential:
    case Chi2Model::kPoisson:
      require(s.theta > 0.0 && std::isfinite(s.theta), ErrorCode::kDomain, "theta must be > 0");
      break;
    case Chi2Model::kDiscrete:
      require(s.probs.size() >= 1 && (s.probs.array() >= 0.0).all() &&
                  std::fabs(s.probs.sum() - 1.0) <= 1e-9,
              ErrorCode::kDomain, "probs must be a probability vector");
      break;
    case Chi2Model::kTopElement:
      require(s.theta > 0.0 && s.theta <= 1.0, ErrorCode::kDomain, "t must lie in (0,1]");
      break;
  }
}

// E[chi^2(P_hat, P)] or, with clip, E[min(chi^2, n)]. An unclipped estimate
// is +inf when any draw has infinite divergence.
inline McEstimate chi2_error_mc(const Chi2Setup& s, std::int64_t n, bool clip, std::int64_t reps,
                                Rng& rng) {
  validate_chi2_setup(s);
  require(n >= 1, ErrorCode::kDomain, "n must be >= 1");
  require(reps >= 2, ErrorCode::kDomain, "need at least 2 replicates");
  RunningStats acc;
  bool infinite = false;
  for (std::int64_t r = 0; r < reps; ++r) {
    double v = chi2_error_draw(s, n, rng);
    if (clip) v = std::min(v, static_cast<double>(n));
    if (!std::isfinite(v)) {
      infinite = true;
      continue;
    }
    acc.add(v);
  }
  if (infinite) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, reps};
  }
  return acc.estimate();
}

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;    // asymptotic Kolmogorov tail at sqrt(n) D
  bool pass = true;
};

// One-sample Kolmogorov-Smirnov test of column j against the exact marginal.
inline KsResult ks_marginal_test(const Dataset& data, const FamilySpec& f, const ParamPoint& p,
                                 double level, Eigen::Index column = 0) {
  require(!is_symbolic(f.kind), ErrorCode::kUnsupported, "KS test needs a continuous family");
  require(data.values.rows() >= 8, ErrorCode::kInsufficientSamples,
          "KS asymptotics need at least 8 observations");
  require(column >= 0 && column < data.values.cols(), ErrorCode::kValidation,
          "column out of range");
  require(level > 0.0 && level < 1.0, ErrorCode::kDomain, "level must lie in (0,1)");
  std::vector<double> x(data.values.col(column).data(),
                        data.values.col(column).data() + data.values.rows());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = marginal_cdf(f, p, column, x[i]);
    dmax = std::max({dmax, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  KsResult out;
  out.statistic = dmax;
  out.p_value = kolmogorov_sf(std::sqrt(n) * dmax);
  out.pass = out.p_value > level;
  return out;
}

}  // namespace sampamp

#endif  // SAMPAMP_VERIFY_HPP_
