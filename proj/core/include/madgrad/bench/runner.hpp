// Copyright 2026 The madgrad-bench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "madgrad/bench/config.hpp"
#include "madgrad/numerics.hpp"
#include "madgrad/problems.hpp"

namespace madgrad::bench {

struct RunRow {
  Step k = 0;
  double loss = 0.0;      // f(x_k, xi_k)
  double subopt = 0.0;    // F(x_k) - F(x*)
  double grad_inf = 0.0;  // ||g_k||_inf
  double gamma = 0.0;
  double lambda = 0.0;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<RunRow> rows;
  bool diverged = false;
  std::string divergence;  // reason, empty unless diverged
  ParamVector final_x;
  double wall_seconds = 0.0;  // informational; never written to CSV
};

struct MeanSe {
  double mean = 0.0;
  double two_se = 0.0;  // 2 * sample sd / sqrt(n); 0 for n = 1
};

struct AggregateRow {
  Step k = 0;
  std::size_t n = 0;  // seeds that reached k
  MeanSe loss, subopt, grad_inf, gamma, lambda;
};

struct RunResult {
  RunConfig config;
  std::vector<RunRecord> records;  // in config.seeds order
  std::vector<AggregateRow> aggregate;
  std::size_t dim = 0;          // problem dimension (a fixture may differ from config.problem.dim)
  double gamma_theorem1 = 0.0;  // step size used by the theorem1 schedule, else 0
};

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec);

/// x0 filled with spec.init.
ParamVector initial_point(const ProblemSpec& spec, std::size_t dim);

/// Checks optimizer/problem compatibility: sparse gradients need c = 1 for
/// madgrad and a dense-capable optimizer; madgrad_theory needs a gradient
/// bound and eps = 0. Throws ConfigError with an explanation.
void check_compatibility(const RunConfig& cfg, const Problem& p);

/// One seed. Records k = 0, every record_every steps and the last step.
/// A non-finite iterate or suboptimality above 1e6 times its initial value
/// stops the run; that row is kept and the record is flagged.
RunRecord run_seed(const RunConfig& cfg, const Problem& p, std::uint64_t seed);

/// Every seed, in parallel over `threads` workers (0: hardware concurrency).
RunResult run(const RunConfig& cfg, unsigned threads = 0);
RunResult run(const RunConfig& cfg, const Problem& p, unsigned threads = 0);

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records);

/// {1, 2.5, 5} x 10^i for i = i_min..i_max, ascending.
std::vector<double> grid_learning_rates(int i_min, int i_max);

struct SweepRow {
  double lr = 0.0;
  double weight_decay = 0.0;
  double final_mean_subopt = 0.0;
  double final_two_se = 0.0;
  bool diverged = false;  // any seed diverged
  bool best = false;
};

/// Runs `base` on every (lr, decay) cell; rows sorted by final mean
/// suboptimality with diverged cells last, and the first row marked best.
std::vector<SweepRow> grid_sweep(const RunConfig& base, int i_min, int i_max, const std::vector<double>& decays,
                                 unsigned threads = 0);

}  // namespace madgrad::bench
