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

#include "madgrad/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madgrad/error.hpp"

namespace madgrad {

namespace {

void require_finite_gradient(const GradSample& g) {
  if (!g.all_finite()) throw DomainError("gradient contains NaN or infinite entries");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void require_unit_interval(double c, const char* what) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1]");
}

double checked_div(double num, double den, const char* what) {
  if (den == 0.0) throw DivisionByZeroError(std::string(what) + ": zero denominator (eps = 0 on an unvisited coordinate)");
  return num / den;
}

}  // namespace

// ---------------------------------------------------------------- MADGRAD

MadgradState MadgradState::init(ParamVector x0, double eps, double weight_decay) {
  if (!(eps >= 0.0)) throw ConfigError("madgrad: eps must be >= 0");
  if (!(weight_decay >= 0.0)) throw ConfigError("madgrad: weight_decay must be >= 0");
  if (!x0.all_finite()) throw DomainError("madgrad: initial point must be finite");
  MadgradState st;
  const std::size_t d = x0.size();
  st.s = ParamVector(d);
  st.nu = ParamVector(d);
  st.z = x0;
  st.x = x0;
  st.x0 = std::move(x0);
  st.eps = eps;
  st.weight_decay = weight_decay;
  return st;
}

MadgradState MadgradState::init_theoretical(ParamVector x0, double g_bound) {
  const std::size_t d = x0.size();
  return init_theoretical(std::move(x0), ParamVector(d, g_bound));
}

MadgradState MadgradState::init_theoretical(ParamVector x0, ParamVector g_bound_per_coord) {
  require_same_dim(x0.size(), g_bound_per_coord.size(), "madgrad theoretical variant: G_d");
  for (double gd : g_bound_per_coord) {
    if (!(gd > 0.0) || !std::isfinite(gd)) throw ConfigError("madgrad theoretical variant: G must be > 0");
  }
  MadgradState st = init(std::move(x0), 0.0, 0.0);
  st.g_bound = std::move(g_bound_per_coord);
  return st;
}

MadgradState madgrad_step(MadgradState st, const GradSample& g, double gamma_k, double c_next) {
  require_same_dim(st.dimension(), g.dimension(), "madgrad_step");
  require_positive(gamma_k, "madgrad_step: gamma_k");
  require_unit_interval(c_next, "madgrad_step: c_{k+1}");
  require_finite_gradient(g);
  if (g.is_sparse() && c_next != 1.0) {
    throw ConfigError("madgrad_step: sparse gradients require c = 1 (no iterate averaging)");
  }

  const double lambda = lambda_weight(gamma_k, st.k);
  const double wd = st.weight_decay;
  g.for_each([&](std::size_t d, double gd) {
    gd += wd * st.x[d];
    st.s[d] += lambda * gd;
    st.nu[d] += lambda * gd * gd;
    st.z[d] = st.x0[d] - cbrt_scale(st.s[d], st.nu[d], st.eps);
    st.x[d] = (1.0 - c_next) * st.x[d] + c_next * st.z[d];
  });
  ++st.k;
  return st;
}

MadgradState madgrad_theoretical_step(MadgradState st, const GradSample& g, double gamma_k, double c_next,
                                      std::optional<double> gamma_next) {
  if (!st.g_bound) throw ConfigError("madgrad_theoretical_step: state has no gradient bound G");
  if (st.eps != 0.0) throw ConfigError("madgrad_theoretical_step: eps must be 0 when G is set");
  if (st.weight_decay != 0.0) throw ConfigError("madgrad_theoretical_step: weight decay is not supported");
  require_same_dim(st.dimension(), g.dimension(), "madgrad_theoretical_step");
  require_positive(gamma_k, "madgrad_theoretical_step: gamma_k");
  require_unit_interval(c_next, "madgrad_theoretical_step: c_{k+1}");
  require_finite_gradient(g);

  const ParamVector& bound = *st.g_bound;
  const ParamVector dense = g.densify();
  for (std::size_t d = 0; d < dense.size(); ++d) {
    if (std::abs(dense[d]) > bound[d]) {
      throw GradientBoundError("gradient coordinate " + std::to_string(d) + " exceeds its bound G_d");
    }
  }

  const double lambda = lambda_weight(gamma_k, st.k);
  const double lambda_next = lambda_weight(gamma_next.value_or(gamma_k), st.k + 1);
  for (std::size_t d = 0; d < dense.size(); ++d) {
    const double gd = dense[d];
    st.s[d] += lambda * gd;
    st.nu[d] += lambda * gd * gd;
    const double alpha = std::cbrt(lambda_next * bound[d] * bound[d] + st.nu[d]);
    st.z[d] = st.x0[d] - st.s[d] / alpha;
    st.x[d] = (1.0 - c_next) * st.x[d] + c_next * st.z[d];
  }
  ++st.k;
  return st;
}

// ---------------------------------------------------------- dual averaging

double BetaRule::at(Step k_plus_1) const noexcept {
  return scale * std::pow(static_cast<double>(k_plus_1), power);
}

DualAvgState DualAvgState::init(ParamVector x0, BetaRule beta, std::optional<MomentumSchedule> double_averaging) {
  if (!(beta.scale > 0.0)) throw ConfigError("dual averaging: beta scale must be > 0");
  DualAvgState st;
  st.s = ParamVector(x0.size());
  st.z = x0;
  st.x = x0;
  st.x0 = std::move(x0);
  st.beta = beta;
  st.double_averaging = std::move(double_averaging);
  return st;
}

DualAvgState dual_avg_step(DualAvgState st, const GradSample& g, double lambda_k) {
  require_same_dim(st.x0.size(), g.dimension(), "dual_avg_step");
  require_finite_gradient(g);
  if (!std::isfinite(lambda_k)) throw DomainError("dual_avg_step: lambda_k must be finite");

  const double beta = st.beta.at(st.k + 1);
  const double c = st.double_averaging ? momentum_coeff(*st.double_averaging, st.k + 1) : 1.0;
  g.for_each([&](std::size_t d, double gd) { st.s[d] += lambda_k * gd; });
  for (std::size_t d = 0; d < st.x0.size(); ++d) {
    st.z[d] = st.x0[d] - st.s[d] / beta;
    st.x[d] = st.double_averaging ? (1.0 - c) * st.x[d] + c * st.z[d] : st.z[d];
  }
  ++st.k;
  return st;
}

// ------------------------------------------------------------------ AdaGrad

AdaGradState AdaGradState::init(AdaGradForm form, ParamVector x0, double eps) {
  if (!(eps >= 0.0)) throw ConfigError("adagrad: eps must be >= 0");
  AdaGradState st;
  st.form = form;
  st.acc = ParamVector(x0.size());
  st.s = ParamVector(x0.size());
  st.x = x0;
  st.x0 = std::move(x0);
  st.eps = eps;
  return st;
}

AdaGradState adagrad_step(AdaGradState st, const GradSample& g, double gamma) {
  require_same_dim(st.x0.size(), g.dimension(), "adagrad_step");
  require_positive(gamma, "adagrad_step: gamma");
  require_finite_gradient(g);

  if (st.form == AdaGradForm::MirrorDescent) {
    g.for_each([&](std::size_t d, double gd) {
      st.acc[d] += gd * gd;
      st.x[d] -= gamma * checked_div(gd, std::sqrt(st.acc[d]) + st.eps, "adagrad_step");
    });
  } else {
    g.for_each([&](std::size_t d, double gd) {
      st.s[d] += gamma * gd;
      st.acc[d] += gamma * gd * gd;
      st.x[d] = st.x0[d] - checked_div(st.s[d], std::sqrt(st.acc[d]) + st.eps, "adagrad_step");
    });
  }
  ++st.k;
  return st;
}

// -------------------------------------------------------------- momentum

HeavyBallState HeavyBallState::init(ParamVector x0, double alpha, double beta) {
  if (!(alpha > 0.0)) throw ConfigError("heavy ball: alpha must be > 0");
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("heavy ball: beta must lie in [0, 1)");
  HeavyBallState st;
  st.prev_x = x0;
  st.x = std::move(x0);
  st.alpha = alpha;
  st.beta = beta;
  return st;
}

HeavyBallState heavy_ball_step(HeavyBallState st, const GradSample& g) {
  require_same_dim(st.x.size(), g.dimension(), "heavy_ball_step");
  require_finite_gradient(g);
  const ParamVector dense = g.densify();
  for (std::size_t d = 0; d < st.x.size(); ++d) {
    const double next = st.x[d] + st.beta * (st.x[d] - st.prev_x[d]) - st.alpha * dense[d];
    st.prev_x[d] = st.x[d];
    st.x[d] = next;
  }
  ++st.k;
  return st;
}

InlineAvgState InlineAvgState::init(ParamVector x0, double eta, double c) {
  if (!(eta > 0.0)) throw ConfigError("inline averaging: eta must be > 0");
  require_unit_interval(c, "inline averaging: c");
  InlineAvgState st;
  st.z = x0;
  st.x = std::move(x0);
  st.eta = eta;
  st.c = c;
  return st;
}

InlineAvgState inline_avg_step(InlineAvgState st, const GradSample& g) {
  require_same_dim(st.x.size(), g.dimension(), "inline_avg_step");
  require_finite_gradient(g);
  const ParamVector dense = g.densify();
  for (std::size_t d = 0; d < st.x.size(); ++d) {
    st.z[d] -= st.eta * dense[d];
    st.x[d] = (1.0 - st.c) * st.x[d] + st.c * st.z[d];
  }
  ++st.k;
  return st;
}

// --------------------------------------------------------------------- Adam

AdamState AdamState::init(ParamVector x0, double beta1, double beta2, double eps, bool amsgrad) {
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("adam: beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("adam: beta2 must lie in [0, 1)");
  if (!(eps >= 0.0)) throw ConfigError("adam: eps must be >= 0");
  AdamState st;
  const std::size_t d = x0.size();
  st.m = ParamVector(d);
  st.v = ParamVector(d);
  st.v_max = ParamVector(d);
  st.x = std::move(x0);
  st.beta1 = beta1;
  st.beta2 = beta2;
  st.eps = eps;
  st.amsgrad = amsgrad;
  return st;
}

AdamState adam_step(AdamState st, const GradSample& g, double gamma) {
  require_same_dim(st.x.size(), g.dimension(), "adam_step");
  require_positive(gamma, "adam_step: gamma");
  require_finite_gradient(g);

  const ParamVector dense = g.densify();
  const double t = static_cast<double>(st.k + 1);
  const double bc1 = 1.0 - std::pow(st.beta1, t);
  const double bc2 = 1.0 - std::pow(st.beta2, t);
  for (std::size_t d = 0; d < st.x.size(); ++d) {
    const double gd = dense[d];
    st.m[d] = st.beta1 * st.m[d] + (1.0 - st.beta1) * gd;
    st.v[d] = st.beta2 * st.v[d] + (1.0 - st.beta2) * gd * gd;
    double second = st.v[d];
    if (st.amsgrad) {
      st.v_max[d] = std::max(st.v_max[d], st.v[d]);
      second = st.v_max[d];
    }
    const double m_hat = st.m[d] / bc1;
    const double v_hat = second / bc2;
    const double den = std::sqrt(v_hat) + st.eps;
    // A coordinate that has only seen zero gradients has m_hat == 0.
    if (m_hat != 0.0) st.x[d] -= gamma * checked_div(m_hat, den, "adam_step");
  }
  ++st.k;
  return st;
}

// -------------------------------------------------------- weighting variants

VariantState VariantState::init(WeightingVariant policy, ParamVector x0, double eps) {
  VariantState st;
  st.policy = policy;
  st.unweighted_acc = ParamVector(x0.size());
  st.weighted_sq = ParamVector(x0.size());
  st.core = MadgradState::init(std::move(x0), eps);
  return st;
}

VariantState variant_step(VariantState st, const GradSample& g, double gamma_k) {
  if (st.policy == WeightingVariant::CubeRoot) {
    st.core = madgrad_step(std::move(st.core), g, gamma_k, 1.0);
    return st;
  }
  MadgradState& c = st.core;
  require_same_dim(c.dimension(), g.dimension(), "variant_step");
  require_positive(gamma_k, "variant_step: gamma_k");
  require_finite_gradient(g);

  const double weight = std::sqrt(static_cast<double>(c.k) + 1.0);
  const double lambda = weight * gamma_k;
  st.weight_sum += weight;
  const ParamVector dense = g.densify();
  for (std::size_t d = 0; d < dense.size(); ++d) {
    const double gd = dense[d];
    c.s[d] += lambda * gd;
    c.nu[d] += lambda * gd * gd;
    st.unweighted_acc[d] += gamma_k * gd * gd;
    st.weighted_sq[d] += weight * gd * gd;

    double next = 0.0;
    switch (st.policy) {
      case WeightingVariant::UnweightedDenominator:
        next = c.x0[d] - checked_div(c.s[d], std::sqrt(st.unweighted_acc[d]) + c.eps, "variant_step");
        break;
      case WeightingVariant::WeightedDenominator:
        next = c.x0[d] - checked_div(c.s[d], std::sqrt(c.nu[d]) + c.eps, "variant_step");
        break;
      case WeightingVariant::WeightedNumerator: {
        const double scale = gamma_k / weight * std::sqrt(st.weight_sum);
        next = c.x0[d] - scale * checked_div(gd, std::sqrt(st.weighted_sq[d]) + c.eps, "variant_step");
        break;
      }
      case WeightingVariant::CubeRoot:
        break;
    }
    c.z[d] = next;
    c.x[d] = next;
  }
  ++c.k;
  return st;
}

}  // namespace madgrad
