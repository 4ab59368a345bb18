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

#ifndef SAMPAMP_FAMILIES_HPP_
#define SAMPAMP_FAMILIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sampamp/error.hpp"
#include "sampamp/numerics.hpp"

namespace sampamp {

enum class FamilyKind {
  kGaussianMean,
  kGaussianCov,
  kGaussianMeanCov,
  kProductExponential,
  kUniformRect,
  kProductPoisson,
  kDiscrete,
  kPoissonizedDiscrete,
  kSparseGaussian,
  kTopElementDiscrete,
  kLowRankCov,
};

inline const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kGaussianMean: return "GaussianMean";
    case FamilyKind::kGaussianCov: return "GaussianCov";
    case FamilyKind::kGaussianMeanCov: return "GaussianMeanCov";
    case FamilyKind::kProductExponential: return "ProductExponential";
    case FamilyKind::kUniformRect: return "UniformRect";
    case FamilyKind::kProductPoisson: return "ProductPoisson";
    case FamilyKind::kDiscrete: return "Discrete";
    case FamilyKind::kPoissonizedDiscrete: return "PoissonizedDiscrete";
    case FamilyKind::kSparseGaussian: return "SparseGaussian";
    case FamilyKind::kTopElementDiscrete: return "TopElementDiscrete";
    case FamilyKind::kLowRankCov: return "LowRankCov";
  }
  return "unknown";
}

inline std::optional<FamilyKind> parse_family(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(FamilyKind::kLowRankCov); ++i) {
    const auto kind = static_cast<FamilyKind>(i);
    if (name == family_name(kind)) return kind;
  }
  return std::nullopt;
}

// dim is d for vector families, the support size k for Discrete and
// PoissonizedDiscrete, d for TopElementDiscrete (symbols 0..d) and the
// ambient dimension p for LowRankCov.
struct FamilySpec {
  FamilyKind kind = FamilyKind::kGaussianMean;
  int dim = 1;
  int sparsity = 0;       // SparseGaussian s
  double top_mass = 0.0;  // TopElementDiscrete t
  int rank = 0;           // LowRankCov d
};

inline bool is_symbolic(FamilyKind kind) {
  return kind == FamilyKind::kDiscrete || kind == FamilyKind::kTopElementDiscrete;
}

// True when t lies in the range [1/(2 sqrt d), 1/2] where the top-element
// amplification rate is known to be tight.
inline bool top_mass_in_tight_range(const FamilySpec& f) {
  return f.top_mass >= 0.5 / std::sqrt(static_cast<double>(f.dim)) && f.top_mass <= 0.5;
}

inline void validate_family(const FamilySpec& f) {
  const std::string name = family_name(f.kind);
  require(f.dim >= 1, ErrorCode::kValidation, name + ": dim must be >= 1");
  switch (f.kind) {
    case FamilyKind::kSparseGaussian:
      require(f.sparsity >= 1 && f.sparsity <= f.dim, ErrorCode::kValidation,
              name + ": sparsity must satisfy 1 <= s <= d");
      break;
    case FamilyKind::kTopElementDiscrete:
      // Sampling and bounds are well defined for any t in (0, 1/2]; the
      // tighter lower end is reported through top_mass_in_tight_range.
      require(f.top_mass > 0.0 && f.top_mass <= 0.5, ErrorCode::kValidation,
              name + ": known mass t must lie in (0, 1/2]");
      break;
    case FamilyKind::kLowRankCov:
      require(f.rank >= 1 && f.dim >= f.rank + 1, ErrorCode::kValidation,
              name + ": needs rank d >= 1 and ambient p >= d+1");
      break;
    default:
      break;
  }
}

// Kind-matched parameter payload; unused fields stay empty.
struct ParamPoint {
  Vector mean;
  SymMatrix cov;
  Vector rate;
  Vector lower;
  Vector upper;
  Vector probs;
  Matrix frame;
};

// Number of columns of a real-valued observation.
inline int observation_dim(const FamilySpec& f) { return is_symbolic(f.kind) ? 1 : f.dim; }

inline void validate_param(const FamilySpec& f, const ParamPoint& p) {
  validate_family(f);
  const std::string name = family_name(f.kind);
  const Eigen::Index d = f.dim;
  auto need_vector = [&](const Vector& v, Eigen::Index size, const char* what) {
    require(v.size() == size, ErrorCode::kValidation,
            name + ": " + what + " must have length " + std::to_string(size));
    require(v.allFinite(), ErrorCode::kValidation, name + ": " + what + " must be finite");
  };
  auto need_cov = [&]() {
    require(p.cov.rows() == d && p.cov.cols() == d, ErrorCode::kValidation,
            name + ": covariance must be d x d");
    require_symmetric(p.cov, name + ": covariance");
    psd_eigen(p.cov);
  };
  auto need_probs = [&](Eigen::Index size) {
    need_vector(p.probs, size, "probability vector");
    require((p.probs.array() >= 0.0).all(), ErrorCode::kValidation,
            name + ": probabilities must be nonnegative");
    require(std::fabs(p.probs.sum() - 1.0) <= 1e-12, ErrorCode::kValidation,
            name + ": probabilities must sum to 1");
  };
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianMeanCov:
      need_vector(p.mean, d, "mean");
      need_cov();
      break;
    case FamilyKind::kGaussianCov:
      need_cov();
      break;
    case FamilyKind::kProductExponential:
    case FamilyKind::kProductPoisson:
      need_vector(p.rate, d, "rate");
      if (f.kind == FamilyKind::kProductExponential) {
        require((p.rate.array() > 0.0).all(), ErrorCode::kValidation,
                name + ": rates must be > 0");
      } else {
        require((p.rate.array() >= 0.0).all(), ErrorCode::kValidation,
                name + ": rates must be >= 0");
      }
      break;
    case FamilyKind::kUniformRect:
      need_vector(p.lower, d, "lower corner");
      need_vector(p.upper, d, "upper corner");
      require((p.upper.array() > p.lower.array()).all(), ErrorCode::kValidation,
              name + ": rectangle widths must be > 0");
      break;
    case FamilyKind::kDiscrete:
    case FamilyKind::kPoissonizedDiscrete:
      need_probs(d);
      break;
    case FamilyKind::kTopElementDiscrete:
      need_probs(d + 1);
      require(std::fabs(p.probs(0) - f.top_mass) <= 1e-12, ErrorCode::kValidation,
              name + ": mass of symbol 0 must equal t");
      break;
    case FamilyKind::kSparseGaussian: {
      need_vector(p.mean, d, "mean");
      const auto nonzero = (p.mean.array() != 0.0).count();
      require(nonzero <= f.sparsity, ErrorCode::kValidation,
              name + ": mean has more than s nonzero entries");
      break;
    }
    case FamilyKind::kLowRankCov:
      require(p.frame.rows() == d && p.frame.cols() == f.rank, ErrorCode::kValidation,
              name + ": frame must be p x d");
      require(max_abs_entry(p.frame.transpose() * p.frame -
                            Matrix::Identity(f.rank, f.rank)) <= 1e-10,
              ErrorCode::kValidation, name + ": frame must satisfy U^T U = I");
      break;
  }
}

// A simple, valid parameter for every family, used when data is generated
// without a user-supplied parameter.
inline ParamPoint default_param(const FamilySpec& f) {
  validate_family(f);
  const Eigen::Index d = f.dim;
  ParamPoint p;
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianMeanCov:
      p.mean = Vector::Zero(d);
      p.cov = Matrix::Identity(d, d);
      break;
    case FamilyKind::kGaussianCov:
      p.cov = Matrix::Identity(d, d);
      break;
    case FamilyKind::kProductExponential:
    case FamilyKind::kProductPoisson:
      p.rate = Vector::Ones(d);
      break;
    case FamilyKind::kUniformRect:
      p.lower = Vector::Zero(d);
      p.upper = Vector::Ones(d);
      break;
    case FamilyKind::kDiscrete:
    case FamilyKind::kPoissonizedDiscrete:
      p.probs = Vector::Constant(d, 1.0 / static_cast<double>(d));
      break;
    case FamilyKind::kTopElementDiscrete:
      p.probs = Vector::Constant(d + 1, (1.0 - f.top_mass) / static_cast<double>(d));
      p.probs(0) = f.top_mass;
      break;
    case FamilyKind::kSparseGaussian:
      p.mean = Vector::Zero(d);
      for (int j = 0; j < f.sparsity; ++j) p.mean(j) = 1.0;
      break;
    case FamilyKind::kLowRankCov:
      p.frame = Matrix::Identity(d, f.rank);
      break;
  }
  return p;
}

struct Dataset {
  FamilySpec family;
  Matrix values;             // n x observation_dim for real-valued families
  std::vector<int> symbols;  // symbolic families
  RngState seed;
  std::string provenance;

  std::size_t rows() const {
    return is_symbolic(family.kind) ? symbols.size() : static_cast<std::size_t>(values.rows());
  }
};

namespace detail {

inline int draw_symbol(Rng& rng, const std::vector<double>& cdf, int first_symbol) {
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  auto index = static_cast<int>(it - cdf.begin());
  if (index >= static_cast<int>(cdf.size())) index = static_cast<int>(cdf.size()) - 1;
  return first_symbol + index;
}

inline std::vector<double> cumulative(const Vector& probs) {
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += probs(i);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  return cdf;
}

}  // namespace detail

inline Dataset sample(const FamilySpec& f, const ParamPoint& p, std::size_t n, Rng& rng) {
  validate_param(f, p);
  require(n >= 1, ErrorCode::kValidation, "sample size must be >= 1");
  Dataset out;
  out.family = f;
  out.seed = rng.state();
  out.provenance = std::string("sample:") + family_name(f.kind);
  const auto rows = static_cast<Eigen::Index>(n);
  const Eigen::Index d = f.dim;
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianMeanCov:
      out.values = sample_mvn_rows(rng, p.mean, sym_sqrt(p.cov), n);
      break;
    case FamilyKind::kGaussianCov:
      out.values = sample_mvn_rows(rng, Vector::Zero(d), sym_sqrt(p.cov), n);
      break;
    case FamilyKind::kSparseGaussian:
      out.values = sample_mvn_rows(rng, p.mean, Matrix::Identity(d, d), n);
      break;
    case FamilyKind::kProductExponential:
      out.values.resize(rows, d);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          out.values(i, j) = -std::log(rng.uniform()) / p.rate(j);
      break;
    case FamilyKind::kUniformRect:
      out.values.resize(rows, d);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          out.values(i, j) = p.lower(j) + (p.upper(j) - p.lower(j)) * rng.uniform();
      break;
    case FamilyKind::kProductPoisson:
      out.values.resize(rows, d);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          out.values(i, j) = static_cast<double>(sample_poisson(rng, p.rate(j)));
      break;
    case FamilyKind::kPoissonizedDiscrete:
      // Column total ~ Poi(n p_j), scattered uniformly over rows: the same law
      // as independent cells, and cheap when k is much larger than n.
      out.values = Matrix::Zero(rows, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        const std::int64_t total = sample_poisson(rng, static_cast<double>(rows) * p.probs(j));
        for (std::int64_t b = 0; b < total; ++b)
          out.values(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(rows))), j) += 1.0;
      }
      break;
    case FamilyKind::kDiscrete:
    case FamilyKind::kTopElementDiscrete: {
      const auto cdf = detail::cumulative(p.probs);
      const int first = f.kind == FamilyKind::kDiscrete ? 1 : 0;
      out.symbols.resize(n);
      for (auto& s : out.symbols) s = detail::draw_symbol(rng, cdf, first);
      break;
    }
    case FamilyKind::kLowRankCov: {
      Matrix z(rows, f.rank);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < f.rank; ++j) z(i, j) = rng.normal();
      out.values = z * p.frame.transpose();
      break;
    }
  }
  return out;
}

struct SufficientStat {
  enum class Kind { kMean, kSecondMoment, kMeanCov, kMinMax, kCounts };
  Kind kind = Kind::kMean;
  std::int64_t n = 0;
  Vector mean;    // kMean, kMeanCov
  SymMatrix cov;  // kSecondMoment (n-normalized), kMeanCov ((n-1)-normalized)
  Vector min;     // kMinMax
  Vector max;
  Vector counts;  // kCounts: column sums
};

inline bool has_sufficient_stat(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianCov:
    case FamilyKind::kGaussianMeanCov:
    case FamilyKind::kProductExponential:
    case FamilyKind::kUniformRect:
    case FamilyKind::kProductPoisson:
    case FamilyKind::kPoissonizedDiscrete:
      return true;
    default:
      return false;
  }
}

inline SufficientStat sufficient_stat(const FamilySpec& f, const Dataset& data) {
  require(has_sufficient_stat(f.kind), ErrorCode::kNoSufficientStatistic,
          std::string(family_name(f.kind)) + " has no registered sufficient statistic");
  const Matrix& x = data.values;
  require(x.rows() >= 1 && x.cols() == f.dim, ErrorCode::kValidation,
          "dataset shape does not match the family");
  SufficientStat t;
  t.n = x.rows();
  const double n = static_cast<double>(x.rows());
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kProductExponential:
      t.kind = SufficientStat::Kind::kMean;
      t.mean = x.colwise().mean().transpose();
      break;
    case FamilyKind::kGaussianCov:
      t.kind = SufficientStat::Kind::kSecondMoment;
      t.cov = (x.transpose() * x) / n;
      break;
    case FamilyKind::kGaussianMeanCov: {
      require(x.rows() >= 2, ErrorCode::kInsufficientSamples,
              "mean and covariance statistic needs n >= 2");
      t.kind = SufficientStat::Kind::kMeanCov;
      t.mean = x.colwise().mean().transpose();
      const Matrix centered = x.rowwise() - t.mean.transpose();
      t.cov = (centered.transpose() * centered) / (n - 1.0);
      break;
    }
    case FamilyKind::kUniformRect:
      t.kind = SufficientStat::Kind::kMinMax;
      t.min = x.colwise().minCoeff().transpose();
      t.max = x.colwise().maxCoeff().transpose();
      break;
    case FamilyKind::kProductPoisson:
    case FamilyKind::kPoissonizedDiscrete:
      t.kind = SufficientStat::Kind::kCounts;
      t.counts = x.colwise().sum().transpose();
      break;
    default:
      break;
  }
  return t;
}

// Largest entrywise difference between two statistics of the same kind,
// relative to max(1, largest magnitude).
inline double suffstat_rel_diff(const SufficientStat& a, const SufficientStat& b) {
  require(a.kind == b.kind, ErrorCode::kValidation, "statistic kinds differ");
  double diff = 0.0;
  double scale = 1.0;
  auto fold = [&](const Matrix& u, const Matrix& v) {
    if (u.size() == 0 && v.size() == 0) return;
    require(u.rows() == v.rows() && u.cols() == v.cols(), ErrorCode::kValidation,
            "statistic shapes differ");
    diff = std::max(diff, max_abs_entry(u - v));
    scale = std::max({scale, max_abs_entry(u), max_abs_entry(v)});
  };
  fold(a.mean, b.mean);
  fold(a.cov, b.cov);
  fold(a.min, b.min);
  fold(a.max, b.max);
  fold(a.counts, b.counts);
  return diff / scale;
}

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

namespace detail {

inline double chol_log_det(const Eigen::LLT<Matrix>& chol) {
  return 2.0 * chol.matrixLLT().diagonal().array().log().sum();
}

// Density of N(mean, scale * S) where chol factors S.
inline double gaussian_log_density(const Vector& x, const Vector& mean,
                                   const Eigen::LLT<Matrix>& chol, double scale) {
  const Eigen::Index d = x.size();
  const Vector r = chol.matrixL().solve(x - mean);
  const double logdet = chol_log_det(chol);
  return -0.5 * r.squaredNorm() / scale - 0.5 * d * std::log(2.0 * std::numbers::pi * scale) -
         0.5 * logdet;
}

inline Eigen::LLT<Matrix> positive_definite_factor(const SymMatrix& m, const char* what) {
  Eigen::LLT<Matrix> chol(m);
  require(chol.info() == Eigen::Success, ErrorCode::kDomain,
          std::string(what) + " must be positive definite for a density");
  return chol;
}

// log density of W_d(V, k) at X, with V given by its Cholesky factor.
inline double wishart_log_density(const SymMatrix& x, const Eigen::LLT<Matrix>& v_chol,
                                  double k) {
  const Eigen::Index d = x.rows();
  Eigen::LLT<Matrix> x_chol(x);
  if (x_chol.info() != Eigen::Success) return kNegInf;
  const double logdet_x = chol_log_det(x_chol);
  const double logdet_v = chol_log_det(v_chol);
  const double trace = v_chol.solve(x).trace();
  return 0.5 * (k - d - 1.0) * logdet_x - 0.5 * trace - 0.5 * k * d * std::numbers::ln2 -
         0.5 * k * logdet_v - multivariate_log_gamma(0.5 * k, static_cast<int>(d));
}

}  // namespace detail

// Log-density of one observation. Symbolic families read the symbol from x(0).
inline double log_density(const FamilySpec& f, const ParamPoint& p, const Vector& x) {
  const Eigen::Index d = f.dim;
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianMeanCov:
      return detail::gaussian_log_density(x, p.mean, detail::positive_definite_factor(p.cov, "covariance"), 1.0);
    case FamilyKind::kGaussianCov:
      return detail::gaussian_log_density(x, Vector::Zero(d), detail::positive_definite_factor(p.cov, "covariance"), 1.0);
    case FamilyKind::kSparseGaussian:
      return -0.5 * (x - p.mean).squaredNorm() - 0.5 * d * std::log(2.0 * std::numbers::pi);
    case FamilyKind::kProductExponential: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (x(j) < 0.0) return kNegInf;
        s += std::log(p.rate(j)) - p.rate(j) * x(j);
      }
      return s;
    }
    case FamilyKind::kUniformRect: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (x(j) < p.lower(j) || x(j) > p.upper(j)) return kNegInf;
        s -= std::log(p.upper(j) - p.lower(j));
      }
      return s;
    }
    case FamilyKind::kProductPoisson: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) s += log_poisson_pmf(x(j), p.rate(j));
      return s;
    }
    case FamilyKind::kPoissonizedDiscrete: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) s += log_poisson_pmf(x(j), p.probs(j));
      return s;
    }
    case FamilyKind::kDiscrete:
    case FamilyKind::kTopElementDiscrete: {
      const int first = f.kind == FamilyKind::kDiscrete ? 1 : 0;
      const double sym = x(0);
      if (sym != std::floor(sym)) return kNegInf;
      const auto index = static_cast<Eigen::Index>(sym) - first;
      if (index < 0 || index >= p.probs.size()) return kNegInf;
      return std::log(p.probs(index));
    }
    case FamilyKind::kLowRankCov:
      fail(ErrorCode::kUnsupported, "LowRankCov has no Lebesgue density");
  }
  return kNegInf;
}

// Exact law of the sufficient statistic for sample size n, prepared once so
// Monte Carlo loops can evaluate it cheaply.
class SuffStatLaw {
 public:
  SuffStatLaw(const FamilySpec& f, const ParamPoint& p, std::int64_t n)
      : family_(f), param_(p), n_(n) {
    validate_param(f, p);
    require(has_sufficient_stat(f.kind), ErrorCode::kNoSufficientStatistic,
            std::string(family_name(f.kind)) + " has no registered sufficient statistic");
    require(n >= 1, ErrorCode::kValidation, "sample size must be >= 1");
    const double dn = static_cast<double>(n);
    const int d = f.dim;
    switch (f.kind) {
      case FamilyKind::kGaussianMean:
        chol_ = detail::positive_definite_factor(p.cov, "covariance");
        break;
      case FamilyKind::kGaussianCov:
        require(n >= d, ErrorCode::kInsufficientSamples, "Wishart density needs n >= d");
        chol_ = detail::positive_definite_factor(p.cov / dn, "covariance");
        break;
      case FamilyKind::kGaussianMeanCov:
        require(n - 1 >= d, ErrorCode::kInsufficientSamples, "Wishart density needs n-1 >= d");
        chol_ = detail::positive_definite_factor(p.cov, "covariance");
        wishart_chol_ = detail::positive_definite_factor(p.cov / (dn - 1.0), "covariance");
        break;
      case FamilyKind::kUniformRect:
        require(n >= 2, ErrorCode::kInsufficientSamples, "min/max density needs n >= 2");
        break;
      default:
        break;
    }
  }

  std::int64_t n() const { return n_; }

  double log_density(const SufficientStat& t) const {
    const double dn = static_cast<double>(n_);
    const Eigen::Index d = family_.dim;
    const ParamPoint& p = param_;
    switch (family_.kind) {
      case FamilyKind::kGaussianMean:
        return detail::gaussian_log_density(t.mean, p.mean, chol_, 1.0 / dn);
      case FamilyKind::kGaussianCov:
        return detail::wishart_log_density(t.cov, chol_, dn);
      case FamilyKind::kGaussianMeanCov:
        return detail::gaussian_log_density(t.mean, p.mean, chol_, 1.0 / dn) +
               detail::wishart_log_density(t.cov, wishart_chol_, dn - 1.0);
      case FamilyKind::kProductExponential: {
        double s = 0.0;
        const double lg = std::lgamma(dn);
        for (Eigen::Index j = 0; j < d; ++j) {
          const double x = t.mean(j);
          if (x <= 0.0) return kNegInf;
          const double beta = dn * p.rate(j);
          s += dn * std::log(beta) + (dn - 1.0) * std::log(x) - beta * x - lg;
        }
        return s;
      }
      case FamilyKind::kUniformRect: {
        double s = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          const double a = t.min(j);
          const double b = t.max(j);
          if (a < p.lower(j) || b > p.upper(j) || b < a) return kNegInf;
          if (b == a) return kNegInf;
          s += std::log(dn * (dn - 1.0)) + (dn - 2.0) * std::log(b - a) -
               dn * std::log(p.upper(j) - p.lower(j));
        }
        return s;
      }
      case FamilyKind::kProductPoisson: {
        double s = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) s += log_poisson_pmf(t.counts(j), dn * p.rate(j));
        return s;
      }
      case FamilyKind::kPoissonizedDiscrete: {
        double s = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) s += log_poisson_pmf(t.counts(j), dn * p.probs(j));
        return s;
      }
      default:
        break;
    }
    fail(ErrorCode::kNoSufficientStatistic, "no statistic law");
  }

  // Draws the statistic directly from its law.
  SufficientStat sample(Rng& rng) const {
    const double dn = static_cast<double>(n_);
    const Eigen::Index d = family_.dim;
    const ParamPoint& p = param_;
    SufficientStat t;
    t.n = n_;
    switch (family_.kind) {
      case FamilyKind::kGaussianMean: {
        t.kind = SufficientStat::Kind::kMean;
        Vector z(d);
        for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
        t.mean = p.mean + chol_.matrixL() * z / std::sqrt(dn);
        break;
      }
      case FamilyKind::kGaussianCov:
        t.kind = SufficientStat::Kind::kSecondMoment;
        t.cov = sample_wishart(rng, chol_, dn);
        break;
      case FamilyKind::kGaussianMeanCov: {
        t.kind = SufficientStat::Kind::kMeanCov;
        Vector z(d);
        for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
        t.mean = p.mean + chol_.matrixL() * z / std::sqrt(dn);
        t.cov = sample_wishart(rng, wishart_chol_, dn - 1.0);
        break;
      }
      case FamilyKind::kProductExponential:
        t.kind = SufficientStat::Kind::kMean;
        t.mean.resize(d);
        for (Eigen::Index j = 0; j < d; ++j) t.mean(j) = sample_gamma(rng, dn, dn * p.rate(j));
        break;
      case FamilyKind::kUniformRect:
        t.kind = SufficientStat::Kind::kMinMax;
        t.min.resize(d);
        t.max.resize(d);
        for (Eigen::Index j = 0; j < d; ++j) {
          // max = U^{1/n}; min given max is max * (1 - V^{1/(n-1)}).
          const double mx = std::exp(std::log(rng.uniform()) / dn);
          const double mn = mx * (1.0 - std::exp(std::log(rng.uniform()) / (dn - 1.0)));
          const double w = p.upper(j) - p.lower(j);
          t.min(j) = p.lower(j) + w * mn;
          t.max(j) = p.lower(j) + w * mx;
        }
        break;
      case FamilyKind::kProductPoisson:
      case FamilyKind::kPoissonizedDiscrete: {
        t.kind = SufficientStat::Kind::kCounts;
        const Vector& rate = family_.kind == FamilyKind::kProductPoisson ? p.rate : p.probs;
        t.counts.resize(d);
        for (Eigen::Index j = 0; j < d; ++j)
          t.counts(j) = static_cast<double>(sample_poisson(rng, dn * rate(j)));
        break;
      }
      default:
        fail(ErrorCode::kNoSufficientStatistic, "no statistic law");
    }
    return t;
  }

  // Bartlett draw of W_d(V, k) with V = L L^T.
  static SymMatrix sample_wishart(Rng& rng, const Eigen::LLT<Matrix>& v_chol, double k) {
    const Matrix l = v_chol.matrixL();
    const Eigen::Index d = l.rows();
    Matrix a = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      a(i, i) = std::sqrt(sample_chi2(rng, k - static_cast<double>(i)));
      for (Eigen::Index j = 0; j < i; ++j) a(i, j) = rng.normal();
    }
    const Matrix la = l * a;
    return la * la.transpose();
  }

 private:
  FamilySpec family_;
  ParamPoint param_;
  std::int64_t n_;
  Eigen::LLT<Matrix> chol_;
  Eigen::LLT<Matrix> wishart_chol_;
};

inline double log_density_suffstat(const FamilySpec& f, const ParamPoint& p,
                                   const SufficientStat& t, std::int64_t n) {
  return SuffStatLaw(f, p, n).log_density(t);
}

// One-dimensional component families used by the Hellinger helpers and the
// product lower-bound machinery. PoissonPair(k) is the coordinate
// Poi(1/k + theta) x Poi(1/k - theta) with theta in [-1/k, 1/k].
enum class ScalarKind { kGaussianUnit, kPoisson, kExponential, kBernoulli, kLogistic, kPoissonPair };

struct ScalarFamily {
  ScalarKind kind = ScalarKind::kGaussianUnit;
  double aux = 0.0;  // k for PoissonPair
};

inline void validate_scalar_param(const ScalarFamily& f, double theta) {
  switch (f.kind) {
    case ScalarKind::kGaussianUnit:
    case ScalarKind::kLogistic:
      require(std::isfinite(theta), ErrorCode::kDomain, "location must be finite");
      break;
    case ScalarKind::kPoisson:
      require(theta >= 0.0 && std::isfinite(theta), ErrorCode::kDomain, "Poisson mean must be >= 0");
      break;
    case ScalarKind::kExponential:
      require(theta > 0.0 && std::isfinite(theta), ErrorCode::kDomain, "exponential rate must be > 0");
      break;
    case ScalarKind::kBernoulli:
      require(theta >= 0.0 && theta <= 1.0, ErrorCode::kDomain, "Bernoulli p must be in [0,1]");
      break;
    case ScalarKind::kPoissonPair:
      require(f.aux > 0.0, ErrorCode::kDomain, "PoissonPair needs k > 0");
      require(std::fabs(theta) <= 1.0 / f.aux + 1e-15, ErrorCode::kDomain,
              "PoissonPair parameter must lie in [-1/k, 1/k]");
      break;
  }
}

inline double logistic_log_density(double x, double loc) {
  const double z = -std::fabs(x - loc);
  return z - 2.0 * std::log1p(std::exp(z));
}

// Composite Simpson estimate of 1 - int sqrt(f1 f2) for location families on
// the real line.
template <typename LogPdf>
double hellinger2_quadrature(LogPdf log_pdf, double theta1, double theta2, double half_width,
                             int intervals = 20000) {
  const double center = 0.5 * (theta1 + theta2);
  const double lo = center - half_width;
  const double h = 2.0 * half_width / intervals;
  double sum = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double x = lo + i * h;
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * std::exp(0.5 * (log_pdf(x, theta1) + log_pdf(x, theta2)));
  }
  return std::clamp(1.0 - sum * h / 3.0, 0.0, 1.0);
}

inline double hellinger2_1d(const ScalarFamily& f, double theta1, double theta2) {
  validate_scalar_param(f, theta1);
  validate_scalar_param(f, theta2);
  if (theta1 == theta2) return 0.0;
  switch (f.kind) {
    case ScalarKind::kGaussianUnit: {
      const double delta = theta1 - theta2;
      return -std::expm1(-delta * delta / 8.0);
    }
    case ScalarKind::kPoisson: {
      const double r = std::sqrt(theta1) - std::sqrt(theta2);
      return -std::expm1(-0.5 * r * r);
    }
    case ScalarKind::kExponential:
      return 1.0 - 2.0 * std::sqrt(theta1 * theta2) / (theta1 + theta2);
    case ScalarKind::kBernoulli:
      return std::clamp(1.0 - std::sqrt(theta1 * theta2) - std::sqrt((1.0 - theta1) * (1.0 - theta2)),
                        0.0, 1.0);
    case ScalarKind::kLogistic:
      return hellinger2_quadrature(logistic_log_density, theta1, theta2,
                                   60.0 + std::fabs(theta1 - theta2));
    case ScalarKind::kPoissonPair: {
      const double base = 1.0 / f.aux;
      const double ra = std::sqrt(base + theta1) - std::sqrt(base + theta2);
      const double rb = std::sqrt(base - theta1) - std::sqrt(base - theta2);
      return -std::expm1(-0.5 * (ra * ra + rb * rb));
    }
  }
  return 0.0;
}

// Draws x ~ p_{theta_from} and returns log p_{theta_to}(x) - log p_{theta_from}(x).
inline double scalar_sample_llr(const ScalarFamily& f, double theta_from, double theta_to,
                                Rng& rng) {
  switch (f.kind) {
    case ScalarKind::kGaussianUnit: {
      const double x = theta_from + rng.normal();
      return 0.5 * ((x - theta_from) * (x - theta_from) - (x - theta_to) * (x - theta_to));
    }
    case ScalarKind::kPoisson: {
      const double x = static_cast<double>(sample_poisson(rng, theta_from));
      return log_poisson_pmf(x, theta_to) - log_poisson_pmf(x, theta_from);
    }
    case ScalarKind::kExponential: {
      const double x = -std::log(rng.uniform()) / theta_from;
      return std::log(theta_to / theta_from) - (theta_to - theta_from) * x;
    }
    case ScalarKind::kBernoulli: {
      const bool one = rng.uniform() < theta_from;
      return one ? std::log(theta_to / theta_from)
                 : std::log((1.0 - theta_to) / (1.0 - theta_from));
    }
    case ScalarKind::kLogistic: {
      const double u = rng.uniform();
      const double x = theta_from + std::log(u / (1.0 - u));
      return logistic_log_density(x, theta_to) - logistic_log_density(x, theta_from);
    }
    case ScalarKind::kPoissonPair: {
      const double base = 1.0 / f.aux;
      const double a = static_cast<double>(sample_poisson(rng, base + theta_from));
      const double b = static_cast<double>(sample_poisson(rng, base - theta_from));
      return log_poisson_pmf(a, base + theta_to) - log_poisson_pmf(a, base + theta_from) +
             log_poisson_pmf(b, base - theta_to) - log_poisson_pmf(b, base - theta_from);
    }
  }
  return 0.0;
}

// Marginal CDF of coordinate j for continuous families.
inline double marginal_cdf(const FamilySpec& f, const ParamPoint& p, Eigen::Index j, double x) {
  switch (f.kind) {
    case FamilyKind::kGaussianMean:
    case FamilyKind::kGaussianMeanCov:
      return normal_cdf((x - p.mean(j)) / std::sqrt(p.cov(j, j)));
    case FamilyKind::kGaussianCov:
      return normal_cdf(x / std::sqrt(p.cov(j, j)));
    case FamilyKind::kSparseGaussian:
      return normal_cdf(x - p.mean(j));
    case FamilyKind::kProductExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p.rate(j) * x);
    case FamilyKind::kUniformRect:
      return std::clamp((x - p.lower(j)) / (p.upper(j) - p.lower(j)), 0.0, 1.0);
    default:
      fail(ErrorCode::kUnsupported,
           std::string(family_name(f.kind)) + " has no continuous marginal CDF");
  }
}

}  // namespace sampamp

#endif  // SAMPAMP_FAMILIES_HPP_
