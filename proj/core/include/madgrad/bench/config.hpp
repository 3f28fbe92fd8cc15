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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "madgrad/schedules.hpp"

namespace madgrad::bench {

struct ProblemSpec {
  std::string id = "l1median";  // l1median | quadratic | logistic | sparse_bow | adam_stress
  std::size_t dim = 10;
  std::size_t samples = 101;  // points, examples or documents
  std::uint64_t seed = 1;
  double center = 1.0;  // mean of generated points (l1median, quadratic)
  double mu = 1e-2;     // ridge strength (logistic, sparse_bow)
  double label_noise = 0.1;
  std::size_t features_per_doc = 4;
  std::string fixture;  // logistic fixture file; generated when empty
  double init = 0.0;    // every coordinate of x0

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

struct OptimizerSpec {
  /// madgrad, madgrad_theory, sgd, sgdm, inline_avg, adam, amsgrad,
  /// adagrad_md, adagrad_da, dual_avg, da_mom, variant_unweighted,
  /// variant_weighted_denominator, variant_weighted_numerator, variant_cube_root.
  std::string id = "madgrad";
  std::optional<double> eps;  // optimizer default when unset
  double weight_decay = 0.0;
  std::optional<double> g_bound;  // madgrad_theory; problem bound when unset
  double beta1 = 0.9;
  double beta2 = 0.999;
  double beta_scale = 1.0;  // dual_avg, da_mom
  double beta_power = 0.5;

  friend bool operator==(const OptimizerSpec&, const OptimizerSpec&) = default;
};

struct ScheduleSpec {
  std::string kind = "constant";  // constant | stagewise | sqrt | warmup | poly | theorem1
  double lr = 1e-2;               // gamma, gamma0, a or peak depending on kind
  std::vector<Step> boundaries;  // in epochs of steps_per_epoch steps
  Step steps_per_epoch = 1;
  double factor = 0.1;
  double offset = 0.0;  // sqrt
  Step warmup = 1;
  Step end = 1;  // poly
  double power = 1.0;

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct MomentumSpec {
  std::string kind = "constant";  // constant | decaying
  double c = 0.1;
  double r = 0.5;
  double j = 1.0;

  friend bool operator==(const MomentumSpec&, const MomentumSpec&) = default;
};

struct RunConfig {
  std::string name = "experiment";
  Step steps = 1000;
  std::vector<std::uint64_t> seeds{0};
  Step record_every = 10;
  std::string output;  // CSV path; relative paths resolve against the output directory
  ProblemSpec problem;
  OptimizerSpec optimizer;
  ScheduleSpec schedule;
  MomentumSpec momentum;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses an INI document with sections experiment, problem, optimizer,
/// schedule and momentum. Unknown sections or keys are rejected. Throws
/// ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);

/// Reads a file; a relative fixture path is resolved against its directory.
RunConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; every field is written.
std::string render_config(const RunConfig& cfg);

/// "1,2,3" or "0..49" (inclusive) or a mix of both.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Structural checks independent of the problem instance.
void validate(const RunConfig& cfg);

bool is_known_optimizer(const std::string& id);
const std::vector<std::string>& optimizer_ids();

/// Builds the schedule. `theorem1` needs the step size computed by the
/// runner, passed as `theorem1_gamma`.
StepSizeSchedule make_schedule(const ScheduleSpec& s, std::optional<double> theorem1_gamma = std::nullopt);
MomentumSchedule make_momentum(const MomentumSpec& m);

/// Copy of `s` with its base learning rate replaced.
ScheduleSpec with_learning_rate(ScheduleSpec s, double lr);

}  // namespace madgrad::bench
