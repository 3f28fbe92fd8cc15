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
#include <variant>
#include <vector>

namespace madgrad {

/// Optimizer step counter k, starting at 0.
using Step = std::uint64_t;

namespace sched {

struct Constant {
  double gamma;
};

/// gamma0 multiplied by `factor` once for every boundary b with k >= b.
struct Stagewise {
  double gamma0;
  std::vector<Step> boundaries;
  double factor;
};

/// a / sqrt(i + b) with the 1-based step count i = k + 1.
struct SqrtDecay {
  double a;
  double b;
};

/// Linear ramp peak * (k + 1) / warmup for k < warmup, then
/// peak * sqrt(warmup / (k + 1)).
struct InverseSqrtWarmup {
  double peak;
  Step warmup_steps;
};

/// gamma0 * (1 - min(k, end_step) / (end_step + 1))^power. The +1 keeps the
/// rate strictly positive after end_step.
struct PolynomialDecay {
  double gamma0;
  Step end_step;
  double power;
};

struct ConstantC {
  double c;
};

/// c_k = (r + 1) / (k + j + r).
struct DecayingC {
  double r;
  double j;
};

}  // namespace sched

/// Step-size sequence gamma_k. Construction validates that gamma_k > 0 for
/// every k.
class StepSizeSchedule {
 public:
  using Variant = std::variant<sched::Constant, sched::Stagewise, sched::SqrtDecay,
                               sched::InverseSqrtWarmup, sched::PolynomialDecay>;

  StepSizeSchedule(Variant v);  // NOLINT(google-explicit-constructor)

  double at(Step k) const noexcept;
  const Variant& variant() const noexcept { return v_; }
  std::string describe() const;

 private:
  Variant v_;
};

/// Momentum (averaging) sequence c_k with 0 < c_k <= 1 for every k.
class MomentumSchedule {
 public:
  using Variant = std::variant<sched::ConstantC, sched::DecayingC>;

  MomentumSchedule(Variant v);  // NOLINT(google-explicit-constructor)

  /// The c_k = (3/2) / (k + 3/2) sequence of the convex convergence bound.
  static MomentumSchedule theorem1() { return MomentumSchedule(sched::DecayingC{0.5, 1.0}); }

  double at(Step k) const noexcept;
  const Variant& variant() const noexcept { return v_; }
  std::string describe() const;

 private:
  Variant v_;
};

double step_size(const StepSizeSchedule& s, Step k) noexcept;

/// lambda_k = gamma_k * sqrt(k + 1).
double lambda_weight(double gamma_k, Step k) noexcept;

double momentum_coeff(const MomentumSchedule& s, Step k) noexcept;

/// Heavy-ball momentum beta equivalent to a constant averaging coefficient c.
inline double heavy_ball_beta(double c) noexcept { return 1.0 - c; }

/// Evaluates (1 - c_k)/c_k (k+j)^r <= (1/c_{k-1}) (k+j-1)^r for 1 <= k <= k_max,
/// with c_k = (r+1)/(k+j+r). Requires 0 < r < 1, j >= 0, k_max >= 1.
bool check_ck_lemma(double r, double j, Step k_max);

/// Smallest (rhs - lhs) / max(1, |rhs|) of the inequality above over
/// 1 <= k <= k_max. check_ck_lemma accepts margins down to -1e-12.
double ck_lemma_margin(double r, double j, Step k_max);

}  // namespace madgrad
