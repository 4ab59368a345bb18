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

#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "sampamp/cli.hpp"

int main(int argc, char** argv) {
  using sampamp::cli::Options;
  Options o;
  CLI::App app{"sampamp: sample amplification experiments"};
  app.add_option("--family", o.family, "family name, e.g. GaussianMean");
  app.add_option("--dim", o.dim, "dimension d (support size k for discrete families)");
  app.add_option("--n", o.n, "input sample size");
  app.add_option("--m", o.m, "number of extra samples");
  app.add_option("--method", o.method, "sufficiency | shuffle | shuffle_general | exact | learning");
  app.add_option("--eps", o.eps, "target TV error for mstar");
  app.add_option("--seed", o.seed, "base seed");
  app.add_option("--reps", o.reps, "Monte Carlo replicates");
  app.add_option("--input", o.input, "input dataset CSV");
  app.add_option("--output", o.output, "output CSV");
  app.add_option("--config", o.config, "experiment config file");
  app.add_option("--rank", o.rank, "LowRankCov rank d");
  app.add_option("--sparsity", o.sparsity, "SparseGaussian sparsity s");
  app.add_option("--top-mass", o.top_mass, "TopElementDiscrete known mass t");
  app.add_option("--c", o.c, "soft-threshold constant, or m = ceil(c n / sqrt(d)) for certify");
  app.add_option("--ceiling", o.ceiling, "search ceiling for mstar");
  app.add_option("--level", o.level, "detector level for verify");
  app.add_flag("--scan-n", o.scan_n, "mstar: also report the smallest workable n");
  const std::pair<const char*, const char*> commands[] = {
      {"amplify", "generate n or --input rows, write n+m amplified rows and a bound report"},
      {"mstar", "largest m whose error bound stays within --eps"},
      {"bound", "error bound or exact error at (n, m)"},
      {"verify", "run the detector battery against an amplifier or baseline"},
      {"experiment", "evaluate a grid of bounds from --config"},
      {"certify", "lower-bound certificate for a product of scalar families"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sampamp::cli::kExitValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return sampamp::cli::dispatch(command, o, std::cout, std::cerr);
}
