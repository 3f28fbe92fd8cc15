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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "madgrad/bench/csv.hpp"
#include "madgrad/bench/presets.hpp"
#include "madgrad/bench/runner.hpp"
#include "madgrad/bench/verify.hpp"
#include "madgrad/theory.hpp"
#include "support/oracles.hpp"

namespace {

using madgrad::ParamVector;
using madgrad::Rng;
using madgrad::theory::ReportRow;
namespace bench = madgrad::bench;

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome from_rows(const std::vector<ReportRow>& rows) {
  std::string detail;
  bool ok = true;
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s n=%zu slack=%.3g", detail.empty() ? "" : "; ", r.name.c_str(), r.cases,
                  r.max_slack);
    detail += buf;
    if (!r.passed) {
      ok = false;
      if (!r.detail.empty()) detail += " (" + r.detail + ")";
    }
  }
  return {ok, detail};
}

Outcome cube_root_vs_oracle() {
  Rng rng(kSeed + 40);
  double worst = 0.0, norm_err = 0.0, spread = 0.0;
  for (std::size_t c = 0; c < 100; ++c) {
    Rng local = rng.fork(c);
    const std::size_t dim = 1 + local.index(8);
    ParamVector q(dim);
    for (auto& v : q) v = std::exp(local.normal());
    const double budget = local.uniform(0.1, 10.0);
    const ParamVector s = madgrad::theory::cube_root_allocation(q, budget);
    const auto ref = madgrad::oracle::projected_gradient_allocation(q.values(), budget);
    for (std::size_t d = 0; d < dim; ++d) worst = std::max(worst, std::abs(s[d] - ref[d]));
    norm_err = std::max(norm_err, std::abs(madgrad::dot(s, s) - budget));
    spread = std::max(spread, madgrad::theory::stationarity_spread(q, s));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "oracle linf=%.3g norm err=%.3g spread=%.3g over 100 instances", worst, norm_err,
                spread);
  return {worst <= 1e-6 && norm_err <= 1e-10 && spread <= 1e-9, buf};
}

Outcome presets_deterministic() {
  std::size_t checked = 0;
  for (const auto& p : bench::presets()) {
    const std::string first = bench::run_csv(bench::run(p.config));
    const std::string second = bench::run_csv(bench::run(p.config, 1));
    if (first != second) return {false, "preset " + p.name + " differs between runs"};
    ++checked;
  }
  return {true, std::to_string(checked) + " presets byte-identical"};
}

Outcome grid_reproduced() {
  const std::vector<double> expected{1e-4, 2.5e-4, 5e-4, 1e-3, 2.5e-3, 5e-3};
  const auto got = bench::grid_learning_rates(-4, -3);
  return {got == expected, "i in {-4,-3} -> " + std::to_string(got.size()) + " rates"};
}

Outcome logistic_smoke() {
  struct Best {
    std::string name;
    double mean = std::numeric_limits<double>::infinity();
    double two_se = 0.0;
  };
  std::vector<Best> best;
  for (const char* name : {"logistic-compare-madgrad", "logistic-compare-sgdm", "logistic-compare-adam",
                           "logistic-compare-adagrad_da"}) {
    const auto* preset = bench::find_preset(name);
    if (!preset) return {false, std::string("missing preset ") + name};
    const auto rows = bench::grid_sweep(preset->config, -4, 1, {});
    Best b{preset->config.optimizer.id};
    for (const auto& r : rows) {
      if (r.best && !r.diverged) {
        b.mean = r.final_mean_subopt;
        b.two_se = r.final_two_se;
      }
    }
    best.push_back(b);
  }
  const Best& m = best.front();
  const Best* rival = &best[1];
  for (std::size_t i = 2; i < best.size(); ++i) {
    if (best[i].mean < rival->mean) rival = &best[i];
  }
  // Two standard errors of the difference of the two means.
  const double tol = std::hypot(m.two_se, rival->two_se);
  const double gap = m.mean - rival->mean;
  std::string detail;
  for (const auto& b : best) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s=%.4g", detail.empty() ? "" : " ", b.name.c_str(), b.mean);
    detail += buf;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "; gap to %s %.3g vs 2SE %.3g", rival->name.c_str(), gap, tol);
  detail += buf;
  return {std::isfinite(m.mean) && gap <= tol, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"momentum equivalence",
       [] { return from_rows({bench::verify_momentum_equivalence(1000, 10, kSeed)}); }},
      {"empirical rate bound", [] { return from_rows({bench::verify_theorem1_empirical(0)}); }},
      {"lemma fuzzing",
       [] {
         return from_rows({bench::verify_error_sum_lemma(10'000, kSeed + 1), bench::verify_ck_lemma(10'000, kSeed + 2)});
       }},
      {"lyapunov per-step inequality",
       [] { return from_rows({bench::verify_lyapunov(1000, 5, true, kSeed + 3)}); }},
      {"cube-root allocation", cube_root_vs_oracle},
      {"support-function properties", [] { return from_rows(bench::verify_support(1000, kSeed + 5)); }},
      {"algebraic identities", [] { return from_rows(bench::verify_identities(1000, kSeed + 6)); }},
      {"sparsity", [] { return from_rows(bench::verify_sparsity(1000, kSeed + 7)); }},
      {"preset determinism", presets_deterministic},
      {"learning-rate grid", grid_reproduced},
      {"logistic behavioral smoke test", logistic_smoke},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s (%.2fs): %s\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
