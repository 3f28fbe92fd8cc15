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

#include "madgrad/bench/csv.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "madgrad/text.hpp"

namespace madgrad::bench {

namespace {

void put(std::ostream& os, double v) { os << text::to_decimal(v); }

void put_row(std::ostream& os, Step k, double loss, double subopt, double grad_inf, double gamma, double lambda,
             const std::string& seed) {
  os << k << ',';
  put(os, loss);
  os << ',';
  put(os, subopt);
  os << ',';
  put(os, grad_inf);
  os << ',';
  put(os, gamma);
  os << ',';
  put(os, lambda);
  os << ',' << seed << '\n';
}

}  // namespace

void write_run_csv(std::ostream& os, const RunResult& result) {
  os << kCsvHeader << '\n';
  for (const auto& rec : result.records) {
    const std::string seed = std::to_string(rec.seed);
    for (const auto& r : rec.rows) put_row(os, r.k, r.loss, r.subopt, r.grad_inf, r.gamma, r.lambda, seed);
  }
  for (const auto& a : result.aggregate) {
    put_row(os, a.k, a.loss.mean, a.subopt.mean, a.grad_inf.mean, a.gamma.mean, a.lambda.mean, "mean");
    put_row(os, a.k, a.loss.two_se, a.subopt.two_se, a.grad_inf.two_se, a.gamma.two_se, a.lambda.two_se, "2se");
  }
}

std::string run_csv(const RunResult& result) {
  std::ostringstream os;
  write_run_csv(os, result);
  return os.str();
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "lr,weight_decay,final_mean_subopt,final_2se,diverged,best\n";
  for (const auto& r : rows) {
    put(os, r.lr);
    os << ',';
    put(os, r.weight_decay);
    os << ',';
    put(os, r.final_mean_subopt);
    os << ',';
    put(os, r.final_two_se);
    os << ',' << (r.diverged ? 1 : 0) << ',' << (r.best ? 1 : 0) << '\n';
  }
}

std::string render_sweep(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %-12s %-16s %-12s %s\n", "lr", "decay", "final_subopt", "2se", "");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-12s %-12s %-16.6e %-12.3e %s%s\n", text::to_decimal(r.lr).c_str(),
                  text::to_decimal(r.weight_decay).c_str(), r.final_mean_subopt, r.final_two_se,
                  r.diverged ? "diverged" : "", r.best ? "<- best" : "");
    os << line;
  }
  return os.str();
}

std::string render_summary(const RunResult& result) {
  std::ostringstream os;
  const auto& cfg = result.config;
  os << cfg.name << ": " << cfg.optimizer.id << " on " << cfg.problem.id << " (D=" << result.dim << "), "
     << cfg.seeds.size() << " seed(s), " << cfg.steps << " steps\n";
  if (result.gamma_theorem1 > 0.0) os << "theorem1 step size: " << text::to_decimal(result.gamma_theorem1) << '\n';
  std::size_t diverged = 0;
  for (const auto& rec : result.records) {
    if (rec.diverged) {
      ++diverged;
      os << "  seed " << rec.seed << " diverged: " << rec.divergence << '\n';
    }
  }
  if (!result.aggregate.empty()) {
    const auto& last = result.aggregate.back();
    char line[160];
    std::snprintf(line, sizeof(line), "final k=%llu  subopt %.6e +- %.2e (2se, n=%zu)\n",
                  static_cast<unsigned long long>(last.k), last.subopt.mean, last.subopt.two_se, last.n);
    os << line;
  }
  if (diverged) os << diverged << " of " << result.records.size() << " seed(s) diverged\n";
  return os.str();
}

}  // namespace madgrad::bench
