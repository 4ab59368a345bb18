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

#ifndef SAMPAMP_CLI_HPP_
#define SAMPAMP_CLI_HPP_

// Command implementations behind the sampamp tool. They take parsed options
// and output streams so tests can drive them without a subprocess.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sampamp/amplify_shuffle.hpp"
#include "sampamp/amplify_sufficiency.hpp"
#include "sampamp/divergences.hpp"
#include "sampamp/error.hpp"
#include "sampamp/families.hpp"
#include "sampamp/lower_bounds.hpp"
#include "sampamp/verify.hpp"

namespace sampamp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitImpossible = 2;

// Shortest decimal string that reads back to the same double.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  const auto res = std::from_chars(first, last, v);
  require(res.ec == std::errc() && res.ptr == last, ErrorCode::kValidation,
          "cannot parse " + what + " value '" + s + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(s.data(), last, v);
  require(res.ec == std::errc() && res.ptr == last, ErrorCode::kValidation,
          "cannot parse integer " + what + " value '" + s + "'");
  return v;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Options {
  std::string family = "GaussianMean";
  int dim = 1;
  std::int64_t n = 100;
  std::int64_t m = 1;
  std::string method = "sufficiency";
  double eps = 0.1;
  std::uint64_t seed = 1;
  std::int64_t reps = 10000;
  std::string input;
  std::string output;
  std::string config;
  int rank = 0;
  int sparsity = 0;
  double top_mass = 0.0;
  double c = -1.0;          // threshold constant for soft thresholding, m-scale for certify
  std::int64_t ceiling = 1000000;
  double level = 0.05;
  bool scan_n = false;
};

// ---------------------------------------------------------------- datasets

inline void write_dataset(std::ostream& os, const Dataset& data) {
  if (is_symbolic(data.family.kind)) {
    os << "symbol\n";
    for (int s : data.symbols) os << s << '\n';
    return;
  }
  const Eigen::Index d = data.values.cols();
  for (Eigen::Index j = 0; j < d; ++j) os << (j ? "," : "") << 'x' << (j + 1);
  os << '\n';
  for (Eigen::Index i = 0; i < data.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) os << (j ? "," : "") << fmt(data.values(i, j));
    os << '\n';
  }
}

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline Dataset read_dataset(std::istream& is, const FamilySpec& f) {
  Dataset data;
  data.family = f;
  data.provenance = "csv";
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), ErrorCode::kIo, "dataset CSV is empty");
  const auto header = split_commas(line);
  if (is_symbolic(f.kind)) {
    require(header.size() == 1 && header[0] == "symbol", ErrorCode::kValidation,
            "symbolic dataset needs a single 'symbol' column");
    while (std::getline(is, line)) {
      if (line.empty() || line == "\r") continue;
      data.symbols.push_back(static_cast<int>(parse_int(split_commas(line)[0], "symbol")));
    }
    return data;
  }
  require(static_cast<int>(header.size()) == f.dim, ErrorCode::kValidation,
          "dataset has " + std::to_string(header.size()) + " columns, family expects " +
              std::to_string(f.dim));
  for (int j = 0; j < f.dim; ++j)
    require(header[static_cast<std::size_t>(j)] == "x" + std::to_string(j + 1),
            ErrorCode::kValidation, "dataset header must be x1,...,xd");
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    require(static_cast<int>(cells.size()) == f.dim, ErrorCode::kValidation,
            "row " + std::to_string(rows.size() + 1) + " has the wrong number of fields");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, "sample"));
    rows.push_back(std::move(row));
  }
  data.values.resize(static_cast<Eigen::Index>(rows.size()), f.dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < f.dim; ++j)
      data.values(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  return data;
}

// ---------------------------------------------------------------- reports

struct ReportRow {
  std::string family;
  int d = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string method;
  std::string value_kind;  // bound | exact | mc_estimate | certificate_gap | mstar | nstar
  double value = 0.0;
  std::optional<double> std_error;
  std::string formula_id;
  std::uint64_t seed = 0;
  std::string detail;
  std::string error;
};

inline const char* kReportHeader =
    "family,d,n,m,method,value_kind,value,stderr,formula_id,seed,detail,error";
inline const char* kVerifyHeader = "test,family,d,n,m,method,level,rejection,tv_lower,stderr,seed";

inline std::string format_row(const ReportRow& r) {
  std::ostringstream os;
  os << csv_field(r.family) << ',' << r.d << ',' << r.n << ',' << r.m << ',' << csv_field(r.method)
     << ',' << r.value_kind << ',' << (r.error.empty() ? fmt(r.value) : "") << ','
     << (r.std_error ? fmt(*r.std_error) : "") << ',' << csv_field(r.formula_id) << ',' << r.seed
     << ',' << csv_field(r.detail) << ',' << csv_field(r.error);
  return os.str();
}

inline std::string format_verify_row(const VerifierReport& r, std::uint64_t seed) {
  std::ostringstream os;
  os << r.test << ',' << r.family << ',' << r.d << ',' << r.n << ',' << r.m << ','
     << csv_field(r.method) << ',' << fmt(r.level) << ',' << fmt(r.rejection) << ','
     << fmt(r.tv_lower) << ',' << fmt(r.std_error) << ',' << seed;
  return os.str();
}

// ---------------------------------------------------------------- families and methods

inline FamilySpec family_from(const Options& o) {
  const auto kind = parse_family(o.family);
  require(kind.has_value(), ErrorCode::kValidation, "unknown family '" + o.family + "'");
  FamilySpec f;
  f.kind = *kind;
  f.dim = o.dim;
  f.sparsity = o.sparsity;
  f.top_mass = o.top_mass;
  f.rank = o.rank;
  validate_family(f);
  return f;
}

inline bool method_supported(FamilyKind kind, const std::string& method) {
  if (method == "sufficiency") return has_sufficient_stat(kind);
  if (method == "exact") return kind == FamilyKind::kGaussianMean;
  if (method == "learning") return kind == FamilyKind::kLowRankCov;
  if (method == "shuffle" || method == "shuffle_general") {
    switch (kind) {
      case FamilyKind::kGaussianMean:
      case FamilyKind::kSparseGaussian:
      case FamilyKind::kProductExponential:
      case FamilyKind::kUniformRect:
      case FamilyKind::kDiscrete:
      case FamilyKind::kTopElementDiscrete:
        return true;
      default:
        return false;
    }
  }
  return false;
}

inline void require_method(const FamilySpec& f, const std::string& method) {
  require(method_supported(f.kind, method), ErrorCode::kValidation,
          "method '" + method + "' is not available for " + family_name(f.kind));
}

inline Learner learner_for(const FamilySpec& f, const Options& o) {
  switch (f.kind) {
    case FamilyKind::kGaussianMean: return gaussian_mean_plugin();
    case FamilyKind::kSparseGaussian: return soft_threshold_sparse(o.c > 0.0 ? o.c : 3.0, f.sparsity);
    case FamilyKind::kProductExponential: return exponential_rate_plugin();
    case FamilyKind::kUniformRect: return uniform_mle();
    case FamilyKind::kDiscrete: return empirical_discrete(f.dim);
    case FamilyKind::kTopElementDiscrete: return top_element_plugin(f.top_mass);
    default:
      fail(ErrorCode::kValidation, std::string(family_name(f.kind)) + " has no shuffle learner");
  }
}

// Symbolic families and shuffle_general use the whole-vector shuffle.
inline bool uses_general_shuffle(const FamilySpec& f, const std::string& method) {
  return method == "shuffle_general" || is_symbolic(f.kind);
}

inline AmplifierOutput run_amplifier(const FamilySpec& f, const ParamPoint& p, const Dataset& data,
                                     const std::string& method, std::int64_t m, const Options& o,
                                     Rng& rng) {
  require_method(f, method);
  if (method == "learning") return amplify_lowrank_cov(data, f.rank, m, rng);
  if (method == "shuffle" || method == "shuffle_general") {
    const Learner l = learner_for(f, o);
    if (uses_general_shuffle(f, method)) return shuffle_amplify_general(data, l, m, rng);
    return shuffle_amplify_product(data, std::vector<Learner>(static_cast<std::size_t>(f.dim), l),
                                   m, rng);
  }
  switch (f.kind) {
    case FamilyKind::kGaussianMean: return amplify_gaussian_mean(data, p.cov, m, rng);
    case FamilyKind::kGaussianCov: return amplify_gaussian_cov(data, m, rng);
    case FamilyKind::kGaussianMeanCov: return amplify_gaussian_mean_cov(data, m, rng);
    case FamilyKind::kProductExponential: return amplify_exponential(data, m, rng);
    case FamilyKind::kUniformRect: return amplify_uniform(data, m, rng);
    case FamilyKind::kProductPoisson: return amplify_poisson_hybrid(data, m, rng);
    case FamilyKind::kPoissonizedDiscrete: return amplify_poissonized_discrete(data, m, rng);
    default:
      fail(ErrorCode::kValidation, "method '" + method + "' cannot run on this family");
  }
}

// Closed-form (or cached Monte Carlo) error bound without data.
inline BoundReport method_bound(const FamilySpec& f, const std::string& method, std::int64_t n,
                                std::int64_t m, const Options& o) {
  require_method(f, method);
  require(n >= 1 && m >= 0, ErrorCode::kValidation, "need n >= 1 and m >= 0");
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double dd = static_cast<double>(f.dim);
  if (method == "exact") return bound_gaussian_exact(dn, dm, dd);
  if (method == "learning") {
    recover_lowrank_frame(Matrix::Zero(n, f.dim), f.rank);  // throws when n < rank
    return make_tv_bound(0.0, formula::kLowRankExact,
                         "low-rank covariance: span recovered exactly once n >= d", "n >= d",
                         true);
  }
  if (method == "shuffle" || method == "shuffle_general") {
    require(n >= 2 && n % 2 == 0, ErrorCode::kRequiresEvenN, "shuffle bounds need even n >= 2");
    const Learner l = learner_for(f, o);
    const std::int64_t half = n / 2;
    if (is_symbolic(f.kind)) {
      const Chi2Guarantee g = chi2_guarantee(l, half);
      return detail::shuffle_report(dn, dm, g.value, g.available, g.estimated, g.std_error,
                                    formula::kShuffleGeneral,
                                    "whole-vector shuffle: TV <= sqrt(m^2/n r(n/2))");
    }
    const auto gs = coordinate_guarantees(std::vector<Learner>(static_cast<std::size_t>(f.dim), l), half);
    bool available = true;
    bool estimated = false;
    if (method == "shuffle_general") {
      double log_prod = 0.0;
      double var_log = 0.0;
      for (const auto& g : gs) {
        available = available && g.available;
        estimated = estimated || g.estimated;
        log_prod += std::log1p(g.value);
        var_log += std::pow(g.std_error / (1.0 + g.value), 2);
      }
      const double r = std::expm1(log_prod);
      return detail::shuffle_report(dn, dm, r, available, estimated, (1.0 + r) * std::sqrt(var_log),
                                    formula::kShuffleGeneral,
                                    "whole-vector shuffle: TV <= sqrt(m^2/n r(n/2))");
    }
    double total = 0.0;
    double var = 0.0;
    for (const auto& g : gs) {
      available = available && g.available;
      estimated = estimated || g.estimated;
      total += g.value;
      var += g.std_error * g.std_error;
    }
    return detail::shuffle_report(dn, dm, total, available, estimated, std::sqrt(var),
                                  formula::kShuffleProduct,
                                  "coordinatewise shuffle: TV <= sqrt(m^2/n sum_j r_j(n/2))");
  }
  switch (f.kind) {
    case FamilyKind::kGaussianMean: return bound_gaussian_mean(dn, dm, dd);
    case FamilyKind::kGaussianCov: return bound_gaussian_cov(dn, dm, dd);
    case FamilyKind::kGaussianMeanCov: return bound_gaussian_mean_cov(dn, dm, dd);
    case FamilyKind::kProductExponential: return bound_exponential(dn, dm, dd);
    case FamilyKind::kUniformRect: return bound_uniform(dn, dm, dd);
    case FamilyKind::kProductPoisson: return bound_poisson_hybrid(dn, dm, dd);
    case FamilyKind::kPoissonizedDiscrete: return bound_poissonized(dn, dm);
    default:
      fail(ErrorCode::kValidation, "no bound for this family and method");
  }
}

inline ReportRow bound_row(const FamilySpec& f, const std::string& method, std::int64_t n,
                           std::int64_t m, const BoundReport& b, std::uint64_t seed) {
  ReportRow r;
  r.family = family_name(f.kind);
  r.d = f.dim;
  r.n = n;
  r.m = m;
  r.method = method;
  r.value_kind = method == "exact" ? "exact" : "bound";
  r.value = b.value;
  if (b.estimated) r.std_error = b.std_error;
  r.formula_id = b.formula_id;
  r.seed = seed;
  r.detail = "unclipped=" + fmt(b.unclipped) + ";validity=" + b.validity +
             ";validity_holds=" + (b.validity_holds ? "1" : "0") +
             ";estimated=" + (b.estimated ? "1" : "0");
  return r;
}

// ---------------------------------------------------------------- m* search

// Largest m in [0, ceiling] with error(m) <= eps, assuming error grows in m.
template <typename ErrorFn>
std::int64_t largest_m_within(ErrorFn error, double eps, std::int64_t ceiling) {
  require(ceiling >= 0, ErrorCode::kValidation, "search ceiling must be >= 0");
  require(eps > 0.0, ErrorCode::kValidation, "eps must be > 0");
  if (error(ceiling) <= eps) return ceiling;
  std::int64_t lo = 0;  // error(0) = 0 <= eps
  std::int64_t hi = ceiling;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (error(mid) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Smallest n in [1, ceiling] with error(n) <= eps, assuming error falls in n;
// returns -1 when no such n exists below the ceiling.
template <typename ErrorFn>
std::int64_t smallest_n_within(ErrorFn error, double eps, std::int64_t ceiling) {
  if (!(error(ceiling) <= eps)) return -1;
  std::int64_t lo = 0;
  std::int64_t hi = ceiling;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    bool ok = false;
    try {
      ok = error(mid) <= eps;
    } catch (const Error&) {
      ok = false;
    }
    if (ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

inline std::int64_t mstar(const FamilySpec& f, const std::string& method, std::int64_t n,
                          double eps, std::int64_t ceiling, const Options& o) {
  return largest_m_within(
      [&](std::int64_t m) { return method_bound(f, method, n, m, o).value; }, eps, ceiling);
}

// ---------------------------------------------------------------- commands

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::kIo, "cannot open '" + path + "' for writing");
  return os;
}

inline int cmd_amplify(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const FamilySpec f = family_from(o);
  require_method(f, o.method);
  require(o.m >= 0, ErrorCode::kValidation, "m must be >= 0");
  const ParamPoint p = default_param(f);
  Dataset data;
  if (!o.input.empty()) {
    std::ifstream is(o.input, std::ios::binary);
    require(static_cast<bool>(is), ErrorCode::kIo, "cannot open '" + o.input + "'");
    data = read_dataset(is, f);
  } else {
    require(o.n >= 1, ErrorCode::kValidation, "n must be >= 1");
    Rng data_rng(o.seed, 0);
    data = sample(f, p, static_cast<std::size_t>(o.n), data_rng);
  }
  Rng rng(o.seed, 1);
  const AmplifierOutput amp = run_amplifier(f, p, data, o.method, o.m, o, rng);
  const auto n = static_cast<std::int64_t>(data.rows());
  ReportRow row = bound_row(f, amp.method, n, o.m, amp.bound, o.seed);
  if (o.output.empty()) {
    write_dataset(out, amp.samples);
    return kExitOk;
  }
  {
    auto os = open_output(o.output);
    write_dataset(os, amp.samples);
  }
  auto rep = open_output(o.output + ".report.csv");
  rep << kReportHeader << '\n' << format_row(row) << '\n';
  return kExitOk;
}

inline int cmd_bound(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const FamilySpec f = family_from(o);
  const BoundReport b = method_bound(f, o.method, o.n, o.m, o);
  out << kReportHeader << '\n' << format_row(bound_row(f, o.method, o.n, o.m, b, o.seed)) << '\n';
  return kExitOk;
}

inline int cmd_mstar(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const FamilySpec f = family_from(o);
  require_method(f, o.method);
  require(o.eps > 0.0 && o.eps <= 1.0, ErrorCode::kValidation, "eps must lie in (0,1]");
  const std::int64_t ms = mstar(f, o.method, o.n, o.eps, o.ceiling, o);
  ReportRow r;
  r.family = family_name(f.kind);
  r.d = f.dim;
  r.n = o.n;
  r.m = ms;
  r.method = o.method;
  r.value_kind = "mstar";
  r.value = static_cast<double>(ms);
  r.formula_id = method_bound(f, o.method, o.n, 1, o).formula_id;
  r.seed = o.seed;
  r.detail = "eps=" + fmt(o.eps) + ";ceiling=" + std::to_string(o.ceiling);
  out << kReportHeader << '\n' << format_row(r) << '\n';
  if (o.scan_n) {
    const std::int64_t ns = smallest_n_within(
        [&](std::int64_t n) { return method_bound(f, o.method, n, std::max<std::int64_t>(o.m, 1), o).value; },
        o.eps, o.ceiling);
    ReportRow s = r;
    s.n = ns;
    s.m = std::max<std::int64_t>(o.m, 1);
    s.value_kind = "nstar";
    s.value = static_cast<double>(ns);
    out << format_row(s) << '\n';
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const FamilySpec f = family_from(o);
  const bool baseline = o.method == "copy_append" || o.method == "plain_append" ||
                        o.method == "uniform_fake" || o.method == "genuine";
  if (!baseline) require_method(f, o.method);
  require(o.n >= 1 && o.m >= 0, ErrorCode::kValidation, "need n >= 1 and m >= 0");
  ParamPoint p = default_param(f);
  if (f.kind == FamilyKind::kTopElementDiscrete) {
    Rng prior(o.seed, 3);
    p = top_element_prior_draw(f, prior);
  }
  const std::int64_t n = o.n;
  const std::int64_t m = o.m;
  const Options opts = o;
  DatasetSampler candidate = [f, p, n, m, opts](Rng& rng) {
    const Dataset data = sample(f, p, static_cast<std::size_t>(n), rng);
    if (opts.method == "genuine") return sample(f, p, static_cast<std::size_t>(n + m), rng);
    if (opts.method == "copy_append") return copy_append(data, m, rng);
    if (opts.method == "plain_append") return plain_append(data, learner_for(f, opts), m, rng);
    if (opts.method == "uniform_fake") return uniform_fake_append(data, m, rng);
    return run_amplifier(f, p, data, opts.method, m, opts, rng).samples;
  };
  BatteryConfig cfg;
  cfg.family = f;
  cfg.n = n;
  cfg.m = m;
  cfg.method = o.method;
  cfg.level = o.level;
  cfg.reps = o.reps;
  cfg.calibration_reps = std::max<std::int64_t>(o.reps, 10000);
  Rng rng(o.seed, 2);
  const auto reports = detector_battery(candidate, genuine_sampler(f, p, n + m),
                                        default_detectors(f, p, n, m), cfg, rng);
  std::ostringstream body;
  for (const auto& r : reports) body << format_verify_row(r, o.seed) << '\n';
  if (o.output.empty()) {
    out << kVerifyHeader << '\n' << body.str();
  } else {
    auto os = open_output(o.output);
    os << kVerifyHeader << '\n' << body.str();
  }
  return kExitOk;
}

inline ScalarFamily scalar_family_from(const std::string& name, int dim) {
  if (name == "GaussianMean" || name == "Gaussian") return {ScalarKind::kGaussianUnit, 0.0};
  if (name == "ProductPoisson" || name == "Poisson") return {ScalarKind::kPoisson, 0.0};
  if (name == "ProductExponential" || name == "Exponential") return {ScalarKind::kExponential, 0.0};
  if (name == "Bernoulli") return {ScalarKind::kBernoulli, 0.0};
  if (name == "Logistic") return {ScalarKind::kLogistic, 0.0};
  if (name == "PoissonizedDiscrete" || name == "PoissonPair")
    return {ScalarKind::kPoissonPair, static_cast<double>(dim)};
  fail(ErrorCode::kValidation, "no coordinate family for certify: '" + name + "'");
}

inline std::string certificate_block(const LowerCertificate& c) {
  std::ostringstream os;
  os << "status=" << (c.inconclusive ? "inconclusive" : "certified") << ";d=" << c.d
     << ";n=" << c.n << ";m=" << c.m << ";c=" << fmt(c.c) << ";reps=" << c.reps
     << ";theta_plus=" << fmt(c.points.theta_plus) << ";theta_minus=" << fmt(c.points.theta_minus)
     << ";h2=" << fmt(c.points.h2) << ";n_j=" << c.n_j << ";tv_nj=" << fmt(c.tv_nj.estimate)
     << ";tv_nj_se=" << fmt(c.tv_nj.std_error) << ";tv_njm=" << fmt(c.tv_njm.estimate)
     << ";tv_njm_se=" << fmt(c.tv_njm.std_error) << ";tv_nj_upper=" << fmt(c.tv_nj_upper)
     << ";tv_njm_lower=" << fmt(c.tv_njm_lower)
     << ";required_increment=" << fmt(c.required_increment)
     << ";observed_increment=" << fmt(c.observed_increment)
     << ";meets_required_increment=" << c.meets_required_increment
     << ";tv_n_ge_0.09=" << c.tv_n_at_least_eps1_low << ";tv_n_le_0.6=" << c.tv_n_at_most_eps1
     << ";tv_20n_ge_0.86=" << c.tv_20n_at_least_eps2
     << ";tv_20n_le_0.99995=" << c.tv_20n_at_most_eps2_high;
  if (!c.inconclusive) {
    os << ";alpha=" << fmt(c.voting.alpha_mean) << ";beta=" << fmt(c.voting.beta)
       << ";threshold=" << c.voting.threshold << ";rb_n_lower=" << fmt(c.voting.rb_n_lower)
       << ";rb_nm_upper=" << fmt(c.voting.rb_nm_upper)
       << ";hoeffding_applies=" << c.voting.hoeffding_applies;
  }
  os << ";gap=" << fmt(c.gap) << ";seed=" << c.seed.seed << ";stream=" << c.seed.stream;
  return os.str();
}

inline int cmd_certify(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const ScalarFamily sf = scalar_family_from(o.family, o.dim);
  require(o.dim >= 1 && o.n >= 1, ErrorCode::kValidation, "need d >= 1 and n >= 1");
  std::int64_t m = o.m;
  if (o.c > 0.0)
    m = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(o.c * static_cast<double>(o.n) /
                                                  std::sqrt(static_cast<double>(o.dim)) - 1e-12)));
  Rng rng(o.seed, 4);
  const LowerCertificate cert = product_lower_certificate(sf, o.n, m, o.dim, o.reps, rng);
  ReportRow r;
  r.family = o.family;
  r.d = o.dim;
  r.n = o.n;
  r.m = m;
  r.method = "product_lower_certificate";
  r.value_kind = "certificate_gap";
  r.value = cert.gap;
  r.formula_id = formula::kProductCertificate;
  r.seed = o.seed;
  r.detail = certificate_block(cert);
  if (o.output.empty()) {
    out << kReportHeader << '\n' << format_row(r) << '\n';
  } else {
    auto os = open_output(o.output);
    os << kReportHeader << '\n' << format_row(r) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- experiment config

// Flat "key = value" lines; '#' starts a comment; repeated keys form grids.
struct Config {
  std::vector<std::pair<std::string, std::string>> entries;

  std::vector<std::string> all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
      if (k == key) out.push_back(v);
    return out;
  }
  std::optional<std::string> one(const std::string& key) const {
    const auto v = all(key);
    if (v.empty()) return std::nullopt;
    require(v.size() == 1, ErrorCode::kValidation, "config key '" + key + "' must appear once");
    return v.front();
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Config parse_config(std::istream& is) {
  static const std::vector<std::string> known = {
      "family", "dim", "n", "m", "method", "reps", "seed", "output",
      "rank", "sparsity", "top_mass", "c"};
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::kValidation,
            "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(std::find(known.begin(), known.end(), key) != known.end(), ErrorCode::kValidation,
            "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    require(!value.empty(), ErrorCode::kValidation,
            "config line " + std::to_string(lineno) + ": empty value");
    cfg.entries.emplace_back(key, value);
  }
  return cfg;
}

// Row-level outcomes that are results rather than structural failures.
inline bool cell_level_error(ErrorCode code) {
  return code != ErrorCode::kValidation && code != ErrorCode::kIo;
}

inline int run_experiment(const Config& cfg, const Options& base, std::ostream& out,
                          std::ostream& err) {
  Options o = base;
  if (auto v = cfg.one("family")) o.family = *v;
  if (auto v = cfg.one("reps")) o.reps = parse_int(*v, "reps");
  if (auto v = cfg.one("seed")) o.seed = static_cast<std::uint64_t>(parse_int(*v, "seed"));
  if (auto v = cfg.one("rank")) o.rank = static_cast<int>(parse_int(*v, "rank"));
  if (auto v = cfg.one("sparsity")) o.sparsity = static_cast<int>(parse_int(*v, "sparsity"));
  if (auto v = cfg.one("top_mass")) o.top_mass = parse_double(*v, "top_mass");
  if (auto v = cfg.one("c")) o.c = parse_double(*v, "c");
  if (o.output.empty())
    if (auto v = cfg.one("output")) o.output = *v;
  std::vector<int> dims;
  std::vector<std::int64_t> ns;
  std::vector<std::int64_t> ms;
  for (const auto& v : cfg.all("dim")) dims.push_back(static_cast<int>(parse_int(v, "dim")));
  for (const auto& v : cfg.all("n")) ns.push_back(parse_int(v, "n"));
  for (const auto& v : cfg.all("m")) ms.push_back(parse_int(v, "m"));
  const auto methods = cfg.all("method");
  require(o.reps >= 0, ErrorCode::kValidation, "reps must be >= 0");

  // Fail fast: every grid entry and every (family, method) pair is checked
  // before any cell runs.
  for (int d : dims) require(d >= 1, ErrorCode::kValidation, "grid dim entries must be positive");
  for (auto n : ns) require(n >= 1, ErrorCode::kValidation, "grid n entries must be positive");
  for (auto m : ms) require(m >= 1, ErrorCode::kValidation, "grid m entries must be positive");
  const bool empty_grid = dims.empty() || ns.empty() || ms.empty() || methods.empty();
  if (!empty_grid) {
    for (int d : dims) {
      Options probe = o;
      probe.dim = d;
      const FamilySpec f = family_from(probe);
      for (const auto& method : methods) require_method(f, method);
    }
  }

  std::ostringstream body;
  body << kReportHeader << '\n';
  bool structural = false;
  std::uint64_t cell = 0;
  if (!empty_grid) {
    for (int d : dims) {
      for (auto n : ns) {
        for (auto m : ms) {
          for (const auto& method : methods) {
            Options co = o;
            co.dim = d;
            const FamilySpec f = family_from(co);
            const std::uint64_t stream = cell++;
            ReportRow row;
            row.family = family_name(f.kind);
            row.d = d;
            row.n = n;
            row.m = m;
            row.method = method;
            row.value_kind = method == "exact" ? "exact" : "bound";
            row.seed = o.seed;
            try {
              row = bound_row(f, method, n, m, method_bound(f, method, n, m, co), o.seed);
            } catch (const Error& e) {
              row.error = e.what();
              structural = structural || !cell_level_error(e.code());
            }
            row.detail += (row.detail.empty() ? "" : ";") + std::string("stream=") +
                          std::to_string(stream);
            body << format_row(row) << '\n';
            if (o.reps > 0 && method == "sufficiency" && preserves_statistic(f.kind)) {
              ReportRow mc = row;
              mc.value_kind = "mc_estimate";
              mc.formula_id = formula::kSuffStatMc;
              mc.error.clear();
              mc.detail = "stream=" + std::to_string(stream);
              try {
                Rng rng(o.seed, stream);
                const McEstimate e = tv_mc_suffstat(f, default_param(f), n, m, o.reps, rng);
                mc.value = e.estimate;
                mc.std_error = e.std_error;
              } catch (const Error& e) {
                mc.error = e.what();
                mc.std_error.reset();
                structural = structural || !cell_level_error(e.code());
              }
              body << format_row(mc) << '\n';
            }
          }
        }
      }
    }
  }
  if (o.output.empty()) {
    out << body.str();
  } else {
    auto os = open_output(o.output);
    os << body.str();
  }
  if (structural) err << "experiment: at least one row failed structurally\n";
  return structural ? kExitValidation : kExitOk;
}

inline int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  require(!o.config.empty(), ErrorCode::kValidation, "experiment needs --config");
  std::ifstream is(o.config, std::ios::binary);
  require(static_cast<bool>(is), ErrorCode::kIo, "cannot open config '" + o.config + "'");
  return run_experiment(parse_config(is), o, out, err);
}

// Runs a subcommand and maps library errors to exit codes.
inline int dispatch(const std::string& command, const Options& o, std::ostream& out,
                    std::ostream& err) {
  try {
    if (command == "amplify") return cmd_amplify(o, out, err);
    if (command == "bound") return cmd_bound(o, out, err);
    if (command == "mstar") return cmd_mstar(o, out, err);
    if (command == "verify") return cmd_verify(o, out, err);
    if (command == "certify") return cmd_certify(o, out, err);
    if (command == "experiment") return cmd_experiment(o, out, err);
    err << "unknown command '" << command << "'\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "sampamp " << command << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kImpossible ? kExitImpossible : kExitValidation;
  }
}

}  // namespace sampamp::cli

#endif  // SAMPAMP_CLI_HPP_
