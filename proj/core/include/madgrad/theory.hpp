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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "madgrad/numerics.hpp"
#include "madgrad/problems.hpp"
#include "madgrad/schedules.hpp"

/// Numerical checks of the convergence analysis: support-function
/// identities, the error-sum and iterate-weighting lemmas, the per-step
/// Lyapunov inequality, the convex rate bound and the cube-root allocation.
namespace madgrad::theory {

/// Outcome of an inequality check. `max_slack` is the largest observed
/// (lhs - rhs), scaled by the magnitude noted at each check; a negative
/// value means the inequality held with room to spare.
struct Check {
  bool passed = true;
  double max_slack = -std::numeric_limits<double>::infinity();

  explicit operator bool() const noexcept { return passed; }
  void merge(const Check& other) noexcept;
};

// ------------------------------------------------------------ support function

struct SupportValue {
  double value;
  ParamVector maximizer;
};

/// max_x { -<s, x - x0> - 1/2 ||x - x0||^2_diag(a) } in closed form:
/// value sum_d s_d^2 / (2 a_d), maximizer z = x0 - s / a.
SupportValue support_value(const ParamVector& a, const ParamVector& s, const ParamVector& x0);

struct SupportReport {
  bool decrease = false;           // V_{a_next}(-s) <= V_a(-s)
  bool gradient_identity = false;  // grad V_a(-s) == z - x0, vs finite differences
  bool smoothness = false;         // V(u + delta) <= V(u) + <delta, grad V(u)> + 1/2 ||delta||^2_{A^-1}
  double decrease_slack = 0.0;
  double gradient_rel_err = 0.0;
  double smoothness_slack = 0.0;

  bool all() const noexcept { return decrease && gradient_identity && smoothness; }
};

/// Requires a_next >= a elementwise (PreconditionError otherwise). Inequality
/// slack is 1e-10 relative to the magnitude of the right-hand side; the
/// gradient identity tolerates a relative error of 1e-6.
SupportReport check_support_properties(const ParamVector& a, const ParamVector& a_next, const ParamVector& s,
                                       const ParamVector& delta, const ParamVector& x0);

// --------------------------------------------------------------------- lemmas

/// For every coordinate d:
///   sum_t lambda_t^2 g_td^2 / (lambda_t G^2 + sum_{i<t} lambda_i g_id^2)^{1/3}
///     <= 3/2 lambda_k (sum_i lambda_i g_id^2)^{2/3}
/// `g_rows[t]` holds the gradient at step t. Throws PreconditionError when
/// lambda is not positive and nondecreasing or some |g| exceeds G.
/// Slack 1e-12 relative to max(1, rhs).
Check check_error_sum_lemma(std::span<const double> lambdas, const std::vector<ParamVector>& g_rows, double G);

/// sum_{i=0}^{k} sqrt(i+1) <= 2/3 (k+2)^{3/2} for all k <= k_max.
bool check_summation_property(Step k_max);

// ----------------------------------------------------------------- Lyapunov

/// Quantities of one step of the theoretical MADGRAD variant.
struct LyapunovStep {
  Step k = 0;
  ParamVector x0;
  ParamVector x_prev;  // x_{k-1} (x0 at k = 0)
  ParamVector x;       // x_k, where g was evaluated
  ParamVector s;       // s_k
  ParamVector s_next;  // s_{k+1}
  ParamVector a;       // alpha_k = cbrt(lambda_k G^2 + nu_k)
  ParamVector a_next;  // alpha_{k+1}
  ParamVector g;
  double lambda = 0.0;  // lambda_k
  double c = 1.0;       // c_k
  SampleId xi = 0;
  /// Per-coordinate G used by the run; absent for traces of other optimizers.
  std::optional<ParamVector> g_bound;
};

/// Runs the theoretical variant with constant gamma and records every step.
std::vector<LyapunovStep> trace_theoretical_madgrad(const Problem& p, const ParamVector& x0, double gamma,
                                                    std::size_t steps, std::uint64_t seed,
                                                    const MomentumSchedule& c = MomentumSchedule::theorem1());

/// Per-step bound on V_{A_{k+1}}(-s_{k+1}); the k = 0 base case compares
/// against lambda_0^2/2 ||g_0||^2_{A_0^-1}. Holds for any fixed comparator.
/// Slack 1e-9 relative to the sum of absolute right-hand terms.
/// Throws ConfigError when the step carries no gradient bound.
Check check_lyapunov_step(const LyapunovStep& step, const Problem& p, const ParamVector& comparator);

// ------------------------------------------------------------------- bounds

/// Statement: rate in k. Derivation: the (k+1)-indexed quantities the proof
/// actually produces.
enum class IndexConvention { Statement, Derivation };

struct BoundInputs {
  Step k = 1;
  std::size_t dim = 1;
  double g_bound = 1.0;
  double dist0 = 0.0;  // ||x0 - x*||_2
  IndexConvention convention = IndexConvention::Statement;
};

struct Theorem1Bound {
  double bound;
  double gamma_opt;
};

/// 6 / k^{1/2} ||x0 - x*|| G D^{1/2}, with the step size minimizing it.
Theorem1Bound theorem1_rhs(const BoundInputs& b);

/// 3 gamma^{2/3} G^{4/3} D + 3/(k+1) gamma^{-2/3} G^{2/3} dist0^2, the bound
/// before the step size is optimized.
double theorem1_prebound(double gamma, Step k, std::size_t dim, double g_bound, double dist0);

/// Which entries the MADGRAD sum sum_i (i+1)^{1/2} G_i^2 covers.
enum class SumLimit {
  ThroughK,       // i = 0..k with k = len - 1
  ThroughKPlus1,  // i = 0..k+1 with k = len - 2
};

struct AdaptiveBounds {
  Step k;
  double madgrad_rhs;
  double adagrad_rhs;
};

/// Rate bounds under per-step gradient bounds G_i:
///   MADGRAD: 6 / (k+1)^{5/4} dist0 D^{1/2} (sum (i+1)^{1/2} G_i^2)^{1/2}
///   AdaGrad: 6 / (k+1)       dist0 D^{1/2} (sum_{i<=k} G_i^2)^{1/2}
AdaptiveBounds adaptive_bounds(std::span<const double> g_hist, double dist0, std::size_t dim,
                               SumLimit limit = SumLimit::ThroughK);

// ---------------------------------------------------------------- cube root

/// Minimizer of sum_d q_d / s_d subject to ||s||_2^2 = c, s > 0:
/// s_d = q_d^{1/3} / sqrt(c^{-1} sum_d q_d^{2/3}).
ParamVector cube_root_allocation(const ParamVector& sq_sums, double c);

double allocation_objective(const ParamVector& sq_sums, const ParamVector& s);

/// Relative spread (max - min) / mean of mu_d = q_d / s_d^3; zero at a
/// stationary point of the Lagrangian.
double stationarity_spread(const ParamVector& sq_sums, const ParamVector& s);

// --------------------------------------------------------- algebraic forms

/// Plain dual averaging rewritten as an SGD step with a decaying pull
/// towards x0: x_{k+1} = x_k - (g_k + (sqrt(k+1) - sqrt(k)) (x_k - x0)) / sqrt(k+1).
ParamVector implicit_regularization_step(const ParamVector& x_k, const ParamVector& x0, const ParamVector& g_k,
                                         Step k);

/// x0 - gamma_k g_k - (1/sqrt(k+1)) sum_{i<k} lambda_i g_i, given that prefix sum.
ParamVector effective_step_form(const ParamVector& x0, double gamma_k, const ParamVector& g_k,
                                const ParamVector& weighted_prefix, Step k);

/// x0 - sum_i gamma_i g_i.
ParamVector sgd_sum_form(const ParamVector& x0, std::span<const double> gammas, const std::vector<ParamVector>& grads);

// ------------------------------------------------------------------ report

struct ReportRow {
  std::string name;
  std::size_t cases = 0;
  double max_slack = 0.0;
  bool passed = false;
  std::string detail;
};

/// Fixed-width table: check, cases, max_slack, result; failing rows are
/// followed by their detail line.
std::string render_report(const std::vector<ReportRow>& rows);

}  // namespace madgrad::theory
