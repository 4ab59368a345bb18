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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every check is recomputed here; nothing is read from a golden file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sampamp/amplify_shuffle.hpp"
#include "sampamp/amplify_sufficiency.hpp"
#include "sampamp/cli.hpp"
#include "sampamp/divergences.hpp"
#include "sampamp/lower_bounds.hpp"
#include "sampamp/verify.hpp"

namespace {

using namespace sampamp;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) { return cli::fmt(x); }

FamilySpec spec(FamilyKind kind, int dim) {
  FamilySpec f;
  f.kind = kind;
  f.dim = dim;
  return f;
}

double rejection_of(const std::vector<VerifierReport>& reps, const std::string& name, double* se) {
  for (const auto& r : reps) {
    if (r.test == name) {
      if (se) *se = r.std_error;
      return r.rejection;
    }
  }
  fail(ErrorCode::kValidation, "detector " + name + " was not registered");
}

Outcome exact_gaussian() {
  const FamilySpec f = spec(FamilyKind::kGaussianMean, 4);
  Rng rng(101);
  const McEstimate e = tv_mc_suffstat(f, default_param(f), 100, 10, 1000000, rng);
  const double exact = gaussian_scaling_tv_exact(100, 10, 4);
  return {std::fabs(e.estimate - exact) <= 3.0 * e.std_error,
          "mc=" + num(e.estimate) + " se=" + num(e.std_error) + " exact=" + num(exact)};
}

Outcome gamma_wishart() {
  double worst = 0.0;
  for (double n : {10.0, 30.0, 100.0, 300.0, 1000.0})
    for (double m : {1.0, std::ceil(n / 10.0), std::ceil(n / 4.0)})
      worst = std::max(worst, std::fabs(gamma_kl(n, m, 1.0) - wishart_kl(2.0 * n, 2.0 * m, 1)));
  return {worst <= 1e-9, "max_abs_diff=" + num(worst)};
}

Outcome sufficiency_exactness() {
  const std::vector<FamilyKind> kinds = {
      FamilyKind::kGaussianMean,       FamilyKind::kGaussianCov, FamilyKind::kGaussianMeanCov,
      FamilyKind::kProductExponential, FamilyKind::kUniformRect, FamilyKind::kProductPoisson,
      FamilyKind::kPoissonizedDiscrete};
  Rng rng(303);
  double worst = 0.0;
  int instances = 0;
  for (FamilyKind kind : kinds) {
    for (int rep = 0; rep < 100; ++rep) {
      const int d = 1 + static_cast<int>(rng.uniform_index(6));
      const FamilySpec f = spec(kind, d);
      const ParamPoint p = default_param(f);
      // Even n: the Poisson hybrid splits its sample in half.
      const auto n = static_cast<std::int64_t>(2 * (d + 1 + rng.uniform_index(20)));
      const auto m = static_cast<std::int64_t>(rng.uniform_index(30));
      const Dataset x = sample(f, p, static_cast<std::size_t>(n), rng);
      AmplifierOutput out;
      switch (kind) {
        case FamilyKind::kGaussianMean: out = amplify_gaussian_mean(x, p.cov, m, rng); break;
        case FamilyKind::kGaussianCov: out = amplify_gaussian_cov(x, m, rng); break;
        case FamilyKind::kGaussianMeanCov: out = amplify_gaussian_mean_cov(x, m, rng); break;
        case FamilyKind::kProductExponential: out = amplify_exponential(x, m, rng); break;
        case FamilyKind::kUniformRect: out = amplify_uniform(x, m, rng); break;
        case FamilyKind::kProductPoisson: out = amplify_poisson_hybrid(x, m, rng); break;
        default: out = amplify_poissonized_discrete(x, m, rng); break;
      }
      if (!out.target_stat || out.samples.rows() != static_cast<std::size_t>(n + m))
        return {false, std::string(family_name(kind)) + ": missing target or wrong size"};
      worst = std::max(worst, suffstat_rel_diff(sufficient_stat(f, out.samples), *out.target_stat));
      ++instances;
    }
  }
  return {worst <= 1e-8, "instances=" + std::to_string(instances) + " max_rel_diff=" + num(worst)};
}

// Least-squares slopes of log m* on (log d, log n) with an intercept.
Outcome rate_law() {
  std::vector<double> ld;
  std::vector<double> ln;
  std::vector<double> lm;
  std::ostringstream table;
  for (int d : {16, 64, 256}) {
    for (int n : {100, 200, 400}) {
      cli::Options o;
      o.family = "GaussianMean";
      o.dim = d;
      o.n = n;
      o.eps = 0.1;
      o.method = "exact";
      std::ostringstream out;
      std::ostringstream err;
      if (cli::dispatch("mstar", o, out, err) != cli::kExitOk) return {false, err.str()};
      std::istringstream is(out.str());
      std::string header;
      std::string row;
      std::getline(is, header);
      std::getline(is, row);
      std::vector<std::string> cols;
      std::stringstream rs(row);
      for (std::string c; std::getline(rs, c, ',');) cols.push_back(c);
      const double ms = std::stod(cols.at(6));
      if (ms < 1.0) return {false, "m*=0 at d=" + std::to_string(d)};
      ld.push_back(std::log(d));
      ln.push_back(std::log(n));
      lm.push_back(std::log(ms));
      table << d << "/" << n << ":" << ms << " ";
    }
  }
  // Normal equations for y = a + b log d + c log n.
  Matrix x(static_cast<Eigen::Index>(lm.size()), 3);
  Vector y(static_cast<Eigen::Index>(lm.size()));
  for (std::size_t i = 0; i < lm.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) << 1.0, ld[i], ln[i];
    y(static_cast<Eigen::Index>(i)) = lm[i];
  }
  const Vector beta = x.colPivHouseholderQr().solve(y);
  const bool ok = std::fabs(beta(1) + 0.5) <= 0.1 && std::fabs(beta(2) - 1.0) <= 0.1;
  return {ok, "slope_d=" + num(beta(1)) + " slope_n=" + num(beta(2)) + " m*=" + table.str()};
}

Outcome shuffle_soundness() {
  const FamilySpec f = spec(FamilyKind::kDiscrete, 50);
  const ParamPoint p = default_param(f);
  const std::int64_t n = 2000;
  const std::int64_t m = 20;
  const double bound = amplification_bound_general(n, m, chi2_guarantee(empirical_discrete(50), n / 2).value);
  const DatasetSampler amp = [&](Rng& r) {
    return shuffle_amplify_general(sample(f, p, n, r), empirical_discrete(50), m, r).samples;
  };
  BatteryConfig cfg{f, n, m, "shuffle", 0.05, 10000, 10000};
  Rng rng(505);
  const auto reps = detector_battery(amp, genuine_sampler(f, p, n + m), default_detectors(f, p, n, m), cfg, rng);
  bool ok = std::fabs(bound - 0.09899494936611666) <= 1e-12;
  std::string detail = "bound=" + num(bound);
  for (const auto& r : reps) {
    ok = ok && r.tv_lower <= bound + 3.0 * r.std_error;
    detail += " " + r.test + ".tv_lower=" + num(r.tv_lower);
  }
  return {ok, detail};
}

Outcome naive_amplifiers() {
  const FamilySpec small = spec(FamilyKind::kGaussianMean, 4);
  const ParamPoint ps = default_param(small);
  const auto base_small = genuine_sampler(small, ps, 20);
  const DatasetSampler copies = [&](Rng& r) { return copy_append(base_small(r), 5, r); };
  BatteryConfig copy_cfg{small, 20, 5, "copy_append", 0.05, 2000, 10000};
  Rng r0(601);
  const double copy_power = rejection_of(
      detector_battery(copies, genuine_sampler(small, ps, 25), default_detectors(small, ps, 20, 5), copy_cfg, r0),
      "duplicate", nullptr);

  const int d = 64;
  const std::int64_t n = 64;
  const std::int64_t m = 16;
  const FamilySpec f = spec(FamilyKind::kGaussianMean, d);
  const ParamPoint p = default_param(f);
  const auto base = genuine_sampler(f, p, n);
  const DatasetSampler plain = [&](Rng& r) { return plain_append(base(r), gaussian_mean_plugin(), m, r); };
  const DatasetSampler shuffled = [&](Rng& r) {
    return shuffle_amplify_product(base(r), std::vector<Learner>(d, gaussian_mean_plugin()), m, r).samples;
  };
  const auto detectors = default_detectors(f, p, n, m);
  BatteryConfig cfg{f, n, m, "", 0.05, 2000, 10000};
  Rng r1(602);
  Rng r2(603);
  double se_shuffle = 0.0;
  const double plain_power =
      rejection_of(detector_battery(plain, genuine_sampler(f, p, n + m), detectors, cfg, r1), "block_mean", nullptr);
  const double shuffle_rej = rejection_of(
      detector_battery(shuffled, genuine_sampler(f, p, n + m), detectors, cfg, r2), "block_mean", &se_shuffle);
  const bool ok = copy_power == 1.0 && plain_power >= 0.5 && shuffle_rej <= 0.05 + 3.0 * se_shuffle;
  return {ok, "copy_duplicate_power=" + num(copy_power) + " plain_block_power=" + num(plain_power) +
                  " shuffled_block_rejection=" + num(shuffle_rej) + " se=" + num(se_shuffle)};
}

Outcome phase_transition() {
  const std::int64_t d = 10000;
  const double center = std::sqrt(2.0 * std::log(static_cast<double>(d)));
  Rng rng(707);
  const auto est = pd_curve_multi(d, {center - 3.0, center + 3.0}, 200000, rng);
  return {est[0].estimate <= 0.2 && est[1].estimate >= 0.8,
          "p_d(c-3)=" + num(est[0].estimate) + " p_d(c+3)=" + num(est[1].estimate)};
}

Outcome stein_identities() {
  const std::int64_t n = 200;
  const std::int64_t d = 20;
  const auto w = default_stein_weights(n, d);
  Rng rng(808);
  const SteinMc mc = stein_mc(n, d, w, 10000, rng);
  const double mean = stein_mean(n, d, w);
  const double var = stein_var(n, d, w);
  const double dev = std::fabs(mean - stein_g(181.0, 20.0));
  const bool ok = std::fabs(mc.mean.estimate - mean) <= 3.0 * mc.mean.std_error &&
                  std::fabs(mc.variance - var) <= 0.1 * var && dev <= 0.5 && std::sqrt(var) <= 0.4;
  return {ok, "mc_mean=" + num(mc.mean.estimate) + " mean=" + num(mean) + " mc_var=" + num(mc.variance) +
                  " var=" + num(var) + " |mean-g|=" + num(dev) + " sd=" + num(std::sqrt(var))};
}

Outcome product_certificate() {
  const ScalarFamily g{ScalarKind::kGaussianUnit, 0.0};
  const std::int64_t n = 50;
  const std::int64_t d = 100;
  const auto m = static_cast<std::int64_t>(std::ceil(1.0 * n / std::sqrt(static_cast<double>(d))));
  Rng rng(909);
  const LowerCertificate c = product_lower_certificate(g, n, m, d, 100000, rng);
  const double delta = c.points.theta_plus - c.points.theta_minus;
  auto exact = [&](std::int64_t t) { return 2.0 * normal_cdf(std::sqrt(static_cast<double>(t)) * delta / 2.0) - 1.0; };
  const bool oracle = std::fabs(c.tv_nj.estimate - exact(c.n_j)) <= 3.0 * c.tv_nj.std_error &&
                      std::fabs(c.tv_njm.estimate - exact(c.n_j + m)) <= 3.0 * c.tv_njm.std_error;
  return {oracle && !c.inconclusive && c.gap > 0.0,
          "m=" + std::to_string(m) + " n_j=" + std::to_string(c.n_j) + " tv=(" + num(c.tv_nj.estimate) + "," +
              num(c.tv_njm.estimate) + ") exact=(" + num(exact(c.n_j)) + "," + num(exact(c.n_j + m)) +
              ") gap=" + num(c.gap)};
}

Outcome boundary_cases() {
  std::string detail;
  FamilySpec lr = spec(FamilyKind::kLowRankCov, 6);
  lr.rank = 4;
  ParamPoint plr = default_param(lr);
  Rng rng(1001);
  // A generic frame, so an in-span output is not in-span by coordinates.
  Matrix g(6, 4);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) g(i, j) = rng.normal();
  plr.frame = Eigen::HouseholderQR<Matrix>(g).householderQ() * Matrix::Identity(6, 4);
  bool impossible = false;
  try {
    amplify_lowrank_cov(sample(lr, plr, 3, rng), 4, 1, rng);
  } catch (const Error& e) {
    impossible = e.code() == ErrorCode::kImpossible;
  }
  const AmplifierOutput ok_out = amplify_lowrank_cov(sample(lr, plr, 4, rng), 4, 5, rng);
  const Matrix proj = plr.frame * plr.frame.transpose();
  const double resid = max_abs_entry(ok_out.samples.values - ok_out.samples.values * proj);
  detail += "n<d_impossible=" + std::string(impossible ? "yes" : "no") + " residual=" + num(resid);

  const double t = 0.01;
  FamilySpec te = spec(FamilyKind::kTopElementDiscrete, 400);
  te.top_mass = t;
  const auto n_shuffle = static_cast<std::int64_t>(std::ceil(4.0 / t));
  Dataset zeros;
  zeros.family = te;
  zeros.symbols.assign(static_cast<std::size_t>(n_shuffle), 0);
  const double bound = shuffle_amplify_general(zeros, top_element_plugin(t), 1, rng).bound.value;
  detail += " shuffle_bound@n=" + std::to_string(n_shuffle) + ":" + num(bound);

  const auto n_small = static_cast<std::int64_t>(std::floor(1.0 / (100.0 * t)));
  Rng prior(1002);
  const ParamPoint pte = top_element_prior_draw(te, prior);
  const DatasetSampler fake = [&](Rng& r) {
    return uniform_fake_append(sample(te, pte, static_cast<std::size_t>(n_small), r), 1, r);
  };
  BatteryConfig cfg{te, n_small, 1, "uniform_fake", 0.05, 1000, 10000};
  Rng battery(1003);
  const double power = rejection_of(
      detector_battery(fake, genuine_sampler(te, pte, n_small + 1), default_detectors(te, pte, n_small, 1), cfg,
                       battery),
      "new_symbol", nullptr);
  detail += " new_symbol_power@n=" + std::to_string(n_small) + ":" + num(power);
  return {impossible && resid <= 1e-8 && bound <= 0.6 && power >= 0.9, detail};
}

Outcome poissonized_table() {
  const double n = 400.0;
  const double m = 20.0;
  const double target = std::sqrt(m * m / (2.0 * n));
  bool ok = true;
  std::string detail = "k poissonized hybrid:";
  double prev_hybrid = -1.0;
  for (int k : {10, 10000}) {
    const FamilySpec f = spec(FamilyKind::kPoissonizedDiscrete, k);
    Rng rng(1101);
    const Dataset x = sample(f, default_param(f), 400, rng);
    const double pz = amplify_poissonized_discrete(x, 20, rng).bound.unclipped;
    const double hybrid = bound_poisson_hybrid(n, m, k).unclipped;
    ok = ok && std::fabs(pz - target) <= 1e-12 &&
         std::fabs(hybrid - m * std::sqrt(2.0 * k) / n) <= 1e-12 && hybrid > prev_hybrid;
    prev_hybrid = hybrid;
    detail += " " + std::to_string(k) + "," + num(pz) + "," + num(hybrid);
    std::printf("  table k=%d poissonized=%.15g hybrid=%.15g\n", k, pz, hybrid);
  }
  // The criterion text quotes 0.2236 next to this formula; the formula value is printed.
  return {ok, detail + " formula_value=" + num(target)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact Gaussian error by Monte Carlo", 60, exact_gaussian},
      {2, "gamma and Wishart KL identity", 1, gamma_wishart},
      {3, "sufficient statistics preserved exactly", 30, sufficiency_exactness},
      {4, "m* rate law in n and d", 10, rate_law},
      {5, "shuffle bound dominates detector TV", 300, shuffle_soundness},
      {6, "verifier catches naive amplifiers", 300, naive_amplifiers},
      {7, "p_d phase transition", 120, phase_transition},
      {8, "Stein loss moments", 60, stein_identities},
      {9, "product lower certificate", 300, product_certificate},
      {10, "low-rank and top-element boundaries", 120, boundary_cases},
      {11, "Poissonized sqrt(n) term", 1, poissonized_table},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d: %s [%s] time=%.2fs limit=%.0fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
