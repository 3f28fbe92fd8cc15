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

#include <iosfwd>
#include <string>
#include <vector>

#include "madgrad/bench/runner.hpp"

namespace madgrad::bench {

inline constexpr const char* kCsvHeader = "k,loss,subopt,grad_inf,gamma,lambda,seed";

/// Per-seed rows in seed order, then one "mean" and one "2se" row per
/// aggregated k. Numbers use the shortest round-trip decimal form.
void write_run_csv(std::ostream& os, const RunResult& result);
std::string run_csv(const RunResult& result);

/// lr,weight_decay,final_mean_subopt,final_2se,diverged,best
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Fixed-width summary for the terminal.
std::string render_sweep(const std::vector<SweepRow>& rows);
std::string render_summary(const RunResult& result);

}  // namespace madgrad::bench
