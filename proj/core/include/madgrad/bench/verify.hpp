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
#include <string>
#include <string_view>
#include <vector>

#include "madgrad/theory.hpp"

namespace madgrad::bench {

struct VerifyOptions {
  std::uint64_t seed = 20260101;
  unsigned threads = 0;
};

/// lemmas, support, lyapunov, theorem1, cube-root, identities, momentum, sparsity.
const std::vector<std::string>& verify_suites();

/// A suite name or "all".
bool is_verify_selector(std::string_view selector);

/// Runs the selected suite(s). Throws ConfigError for an unknown selector.
std::vector<theory::ReportRow> run_verify(std::string_view selector, const VerifyOptions& opts = {});

bool all_passed(const std::vector<theory::ReportRow>& rows);

// Individual checks, shared with the test suite.
theory::ReportRow verify_error_sum_lemma(std::size_t cases, std::uint64_t seed);
theory::ReportRow verify_ck_lemma(std::size_t cases, std::uint64_t seed);
theory::ReportRow verify_summation_property(Step k_max);
std::vector<theory::ReportRow> verify_support(std::size_t cases, std::uint64_t seed);
theory::ReportRow verify_lyapunov(std::size_t steps, std::size_t seeds, bool optimal_comparator, std::uint64_t seed);
/// theorem1-l1median preset: mean - 2 SE below the bound at every recorded k >= 100.
theory::ReportRow verify_theorem1_empirical(unsigned threads);
theory::ReportRow verify_gamma_opt_minimizes_prebound();
std::vector<theory::ReportRow> verify_cube_root(std::size_t cases, std::uint64_t seed);
std::vector<theory::ReportRow> verify_identities(std::size_t steps, std::uint64_t seed);
theory::ReportRow verify_momentum_equivalence(std::size_t steps, std::size_t dim, std::uint64_t seed);
std::vector<theory::ReportRow> verify_sparsity(std::size_t steps, std::uint64_t seed);

}  // namespace madgrad::bench
