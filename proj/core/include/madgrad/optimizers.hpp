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

#include <optional>

#include "madgrad/numerics.hpp"
#include "madgrad/schedules.hpp"

namespace madgrad {

// Every optimizer is a pure transition `State step(State, gradient, ...)`.
// States are taken by value, so a step that throws leaves the caller's state
// untouched.

inline constexpr double kDefaultMadgradEps = 1e-6;

/// State of MADGRAD (momentumized, adaptive, dual averaged gradient).
///
///   lambda_k = gamma_k sqrt(k + 1)
///   s_{k+1}  = s_k  + lambda_k g_k
///   nu_{k+1} = nu_k + lambda_k g_k^2
///   z_{k+1}  = x0 - s_{k+1} / (cbrt(nu_{k+1}) + eps)
///   x_{k+1}  = (1 - c_{k+1}) x_k + c_{k+1} z_{k+1}
///
/// The theoretical variant replaces the denominator with
/// cbrt(lambda_{k+1} G^2 + nu_{k+1}) and requires eps == 0.
struct MadgradState {
  ParamVector x0;
  ParamVector s;
  ParamVector nu;
  ParamVector z;
  ParamVector x;
  Step k = 0;
  double eps = kDefaultMadgradEps;
  /// Added to the gradient as weight_decay * x_k before the update.
  double weight_decay = 0.0;
  /// Per-coordinate gradient bound G_d; set only for the theoretical variant.
  std::optional<ParamVector> g_bound;

  static MadgradState init(ParamVector x0, double eps = kDefaultMadgradEps, double weight_decay = 0.0);
  static MadgradState init_theoretical(ParamVector x0, double g_bound);
  static MadgradState init_theoretical(ParamVector x0, ParamVector g_bound_per_coord);

  std::size_t dimension() const noexcept { return x0.size(); }
};

/// One MADGRAD step; c_next is c_{k+1}.
///
/// Sparse gradients are only accepted with c_next == 1 (no iterate averaging);
/// then only the listed coordinates of s, nu, z and x change. Weight decay on
/// a sparse sample is applied to the listed coordinates only.
MadgradState madgrad_step(MadgradState st, const GradSample& g, double gamma_k, double c_next);

/// Step of the variant analysed in the convergence proof. `gamma_next`
/// (gamma_{k+1}, used in lambda_{k+1}) defaults to gamma_k.
MadgradState madgrad_theoretical_step(MadgradState st, const GradSample& g, double gamma_k, double c_next,
                                      std::optional<double> gamma_next = std::nullopt);

/// beta_{k+1} = scale * (k + 1)^power.
struct BetaRule {
  double scale = 1.0;
  double power = 0.5;

  double at(Step k_plus_1) const noexcept;
};

/// Dual averaging with the x0-centred Euclidean proximity function, optionally
/// with double averaging (x_{k+1} = (1 - c_{k+1}) x_k + c_{k+1} z_{k+1}).
struct DualAvgState {
  ParamVector x0;
  ParamVector s;
  ParamVector z;
  ParamVector x;
  Step k = 0;
  BetaRule beta;
  std::optional<MomentumSchedule> double_averaging;

  static DualAvgState init(ParamVector x0, BetaRule beta = {},
                           std::optional<MomentumSchedule> double_averaging = std::nullopt);
};

DualAvgState dual_avg_step(DualAvgState st, const GradSample& g, double lambda_k);

enum class AdaGradForm { MirrorDescent, DualAveraging };

/// Diagonal AdaGrad. The dual averaging form accumulates gamma_i g_i^2 (step
/// size inside the sums); the mirror descent form accumulates g_i^2.
struct AdaGradState {
  AdaGradForm form = AdaGradForm::MirrorDescent;
  ParamVector x0;
  ParamVector x;
  ParamVector acc;
  ParamVector s;
  Step k = 0;
  double eps = 0.0;

  static AdaGradState init(AdaGradForm form, ParamVector x0, double eps = 1e-10);
};

AdaGradState adagrad_step(AdaGradState st, const GradSample& g, double gamma);

/// x_{k+1} = x_k + beta (x_k - x_{k-1}) - alpha g_k.
struct HeavyBallState {
  ParamVector x;
  ParamVector prev_x;
  double alpha = 0.0;
  double beta = 0.0;
  Step k = 0;

  static HeavyBallState init(ParamVector x0, double alpha, double beta);
};

HeavyBallState heavy_ball_step(HeavyBallState st, const GradSample& g);

/// z_{k+1} = z_k - eta g_k;  x_{k+1} = (1 - c) x_k + c z_{k+1}.
/// Equivalent to heavy ball with beta = 1 - c and alpha = c eta.
struct InlineAvgState {
  ParamVector x;
  ParamVector z;
  double eta = 0.0;
  double c = 1.0;
  Step k = 0;

  static InlineAvgState init(ParamVector x0, double eta, double c);
};

InlineAvgState inline_avg_step(InlineAvgState st, const GradSample& g);

struct AdamState {
  ParamVector x;
  ParamVector m;
  ParamVector v;
  /// Running maximum of v (AMSGrad only).
  ParamVector v_max;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool amsgrad = false;
  Step k = 0;

  static AdamState init(ParamVector x0, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8,
                        bool amsgrad = false);
};

AdamState adam_step(AdamState st, const GradSample& g, double gamma);

/// Denominator/weighting alternatives considered on the way to the cube root.
enum class WeightingVariant { UnweightedDenominator, WeightedDenominator, WeightedNumerator, CubeRoot };

/// State for the weighting variants. `core` carries x0, s = sum lambda_i g_i
/// and nu = sum lambda_i g_i^2 with lambda_i = sqrt(i+1) gamma_i; the extra
/// accumulators serve the square-root variants.
struct VariantState {
  WeightingVariant policy = WeightingVariant::CubeRoot;
  MadgradState core;
  /// sum gamma_i g_i^2
  ParamVector unweighted_acc;
  /// sum sqrt(i+1) g_i^2
  ParamVector weighted_sq;
  /// sum sqrt(i+1)
  double weight_sum = 0.0;

  static VariantState init(WeightingVariant policy, ParamVector x0, double eps = kDefaultMadgradEps);

  const ParamVector& x() const noexcept { return core.x; }
  Step k() const noexcept { return core.k; }
};

VariantState variant_step(VariantState st, const GradSample& g, double gamma_k);

}  // namespace madgrad
