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

#include "madgrad/theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "madgrad/error.hpp"
#include "madgrad/optimizers.hpp"

namespace madgrad::theory {

namespace {

void require_positive_scaling(const ParamVector& a, const char* what) {
  for (double v : a) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + ": scaling must be positive");
  }
}

/// V_a(u) = sum u_d^2 / (2 a_d).
double support_at(const ParamVector& a, const ParamVector& u) {
  double sum = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) sum += u[d] * u[d] / (2.0 * a[d]);
  return sum;
}

ParamVector negate(const ParamVector& v) {
  ParamVector out(v.size());
  for (std::size_t d = 0; d < v.size(); ++d) out[d] = -v[d];
  return out;
}

ParamVector alpha(const ParamVector& g_bound, double lambda, const ParamVector& nu) {
  ParamVector a(nu.size());
  for (std::size_t d = 0; d < nu.size(); ++d) a[d] = std::cbrt(lambda * g_bound[d] * g_bound[d] + nu[d]);
  return a;
}

}  // namespace

void Check::merge(const Check& other) noexcept {
  passed = passed && other.passed;
  max_slack = std::max(max_slack, other.max_slack);
}

SupportValue support_value(const ParamVector& a, const ParamVector& s, const ParamVector& x0) {
  require_same_dim(a.size(), s.size(), "support_value");
  require_same_dim(a.size(), x0.size(), "support_value");
  require_positive_scaling(a, "support_value");
  ParamVector z(a.size());
  for (std::size_t d = 0; d < a.size(); ++d) z[d] = x0[d] - s[d] / a[d];
  return {support_at(a, s), std::move(z)};
}

SupportReport check_support_properties(const ParamVector& a, const ParamVector& a_next, const ParamVector& s,
                                       const ParamVector& delta, const ParamVector& x0) {
  require_same_dim(a.size(), a_next.size(), "check_support_properties");
  require_same_dim(a.size(), delta.size(), "check_support_properties");
  require_positive_scaling(a, "check_support_properties");
  require_positive_scaling(a_next, "check_support_properties");
  for (std::size_t d = 0; d < a.size(); ++d) {
    if (a_next[d] < a[d]) throw PreconditionError("check_support_properties: a_next must dominate a");
  }
  SupportReport rep;
  const auto [value, z] = support_value(a, s, x0);
  const ParamVector u = negate(s);

  const double v_next = support_at(a_next, u);
  rep.decrease_slack = (v_next - value) / std::max(1.0, std::abs(value));
  rep.decrease = rep.decrease_slack <= 1e-10;

  // Central differences of V_a at u against z - x0.
  ParamVector probe = u;
  double worst = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double h = 1e-5 * std::max(1.0, std::abs(u[d]));
    probe[d] = u[d] + h;
    const double up = support_at(a, probe);
    probe[d] = u[d] - h;
    const double down = support_at(a, probe);
    probe[d] = u[d];
    const double fd = (up - down) / (2.0 * h);
    const double expected = z[d] - x0[d];
    worst = std::max(worst, std::abs(fd - expected) / std::max(1.0, std::abs(expected)));
  }
  rep.gradient_rel_err = worst;
  rep.gradient_identity = worst <= 1e-6;

  ParamVector shifted = u;
  double inner = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    shifted[d] += delta[d];
    inner += delta[d] * (z[d] - x0[d]);
  }
  const double lhs = support_at(a, shifted);
  const double rhs = value + inner + 0.5 * weighted_inv_sq_norm(delta, a);
  rep.smoothness_slack = (lhs - rhs) / std::max(1.0, std::abs(value) + std::abs(inner) + std::abs(rhs));
  rep.smoothness = rep.smoothness_slack <= 1e-10;
  return rep;
}

Check check_error_sum_lemma(std::span<const double> lambdas, const std::vector<ParamVector>& g_rows, double G) {
  if (lambdas.empty() || lambdas.size() != g_rows.size()) {
    throw PreconditionError("error-sum lemma: need one lambda per gradient row");
  }
  if (!(G > 0.0)) throw PreconditionError("error-sum lemma: G must be positive");
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    if (!(lambdas[t] > 0.0)) throw PreconditionError("error-sum lemma: lambda must be positive");
    if (t > 0 && lambdas[t] < lambdas[t - 1]) throw PreconditionError("error-sum lemma: lambda must be nondecreasing");
  }
  const std::size_t dim = g_rows.front().size();
  for (const auto& row : g_rows) {
    require_same_dim(dim, row.size(), "error-sum lemma");
    for (double v : row) {
      if (!(std::abs(v) <= G)) throw PreconditionError("error-sum lemma: |g| exceeds G");
    }
  }

  Check out;
  const double lambda_k = lambdas.back();
  for (std::size_t d = 0; d < dim; ++d) {
    double lhs = 0.0;
    double running = 0.0;  // sum_{i<t} lambda_i g_i^2
    for (std::size_t t = 0; t < lambdas.size(); ++t) {
      const double g2 = g_rows[t][d] * g_rows[t][d];
      lhs += lambdas[t] * lambdas[t] * g2 / std::cbrt(lambdas[t] * G * G + running);
      running += lambdas[t] * g2;
    }
    const double rhs = 1.5 * lambda_k * std::pow(running, 2.0 / 3.0);
    const double slack = (lhs - rhs) / std::max(1.0, rhs);
    out.max_slack = std::max(out.max_slack, slack);
    out.passed = out.passed && slack <= 1e-12;
  }
  return out;
}

bool check_summation_property(Step k_max) {
  double sum = 0.0;
  for (Step k = 0; k <= k_max; ++k) {
    const auto kd = static_cast<double>(k);
    sum += std::sqrt(kd + 1.0);
    if (sum > (2.0 / 3.0) * std::pow(kd + 2.0, 1.5) * (1.0 + 1e-15)) return false;
  }
  return true;
}

std::vector<LyapunovStep> trace_theoretical_madgrad(const Problem& p, const ParamVector& x0, double gamma,
                                                    std::size_t steps, std::uint64_t seed,
                                                    const MomentumSchedule& c) {
  const auto G = p.g_inf_bound();
  if (!G) throw ConfigError("theoretical MADGRAD needs a problem with a global gradient bound");
  MadgradState st = MadgradState::init_theoretical(x0, *G);
  Rng rng(seed);
  std::vector<LyapunovStep> trace;
  trace.reserve(steps);
  ParamVector x_prev = x0;
  for (std::size_t i = 0; i < steps; ++i) {
    const Step k = st.k;
    LyapunovStep step;
    step.k = k;
    step.x0 = st.x0;
    step.x_prev = x_prev;
    step.x = st.x;
    step.s = st.s;
    step.lambda = lambda_weight(gamma, k);
    step.a = alpha(*st.g_bound, step.lambda, st.nu);
    step.c = momentum_coeff(c, k);
    step.xi = p.sample(rng);
    step.g = p.grad(st.x, step.xi).densify();
    step.g_bound = st.g_bound;

    x_prev = st.x;
    st = madgrad_theoretical_step(std::move(st), step.g, gamma, momentum_coeff(c, k + 1));
    step.s_next = st.s;
    step.a_next = alpha(*st.g_bound, lambda_weight(gamma, k + 1), st.nu);
    trace.push_back(std::move(step));
  }
  return trace;
}

Check check_lyapunov_step(const LyapunovStep& st, const Problem& p, const ParamVector& comparator) {
  if (!st.g_bound) throw ConfigError("Lyapunov check needs a trace of the theoretical variant (G is unset)");
  const double lhs = support_at(st.a_next, negate(st.s_next));
  const double noise = 0.5 * st.lambda * st.lambda * weighted_inv_sq_norm(st.g, st.a);

  double rhs = 0.0;
  double scale = 0.0;
  if (st.k == 0) {
    rhs = noise;
    scale = std::abs(noise);
  } else {
    const double v_k = support_at(st.a, negate(st.s));
    ParamVector diff(st.x0.size());
    for (std::size_t d = 0; d < diff.size(); ++d) diff[d] = st.x0[d] - comparator[d];
    const double drift = st.lambda * dot(st.g, diff);
    const double f_star = p.loss(comparator, st.xi);
    const double now = -(1.0 / st.c) * st.lambda * (p.loss(st.x, st.xi) - f_star);
    const double before = (1.0 - st.c) / st.c * st.lambda * (p.loss(st.x_prev, st.xi) - f_star);
    rhs = v_k + noise + drift + now + before;
    scale = std::abs(v_k) + std::abs(noise) + std::abs(drift) + std::abs(now) + std::abs(before);
  }
  Check out;
  out.max_slack = (lhs - rhs) / std::max(1.0, scale);
  out.passed = out.max_slack <= 1e-9;
  return out;
}

Theorem1Bound theorem1_rhs(const BoundInputs& b) {
  if (b.dim == 0 || !(b.g_bound > 0.0) || !(b.dist0 >= 0.0)) {
    throw DomainError("theorem1_rhs: need D >= 1, G > 0 and dist0 >= 0");
  }
  const double k = b.convention == IndexConvention::Statement ? static_cast<double>(b.k) : static_cast<double>(b.k) + 1.0;
  if (!(k >= 1.0)) throw DomainError("theorem1_rhs: k must be >= 1");
  const auto D = static_cast<double>(b.dim);
  const double bound = 6.0 / std::sqrt(k) * b.dist0 * b.g_bound * std::sqrt(D);
  const double gamma = std::pow(b.dist0, 1.5) / (std::pow(k, 0.75) * std::pow(D, 0.75) * std::sqrt(b.g_bound));
  return {bound, gamma};
}

double theorem1_prebound(double gamma, Step k, std::size_t dim, double g_bound, double dist0) {
  const auto D = static_cast<double>(dim);
  const double g23 = std::cbrt(gamma * gamma);
  return 3.0 * g23 * std::pow(g_bound, 4.0 / 3.0) * D +
         3.0 / (static_cast<double>(k) + 1.0) / g23 * std::pow(g_bound, 2.0 / 3.0) * dist0 * dist0;
}

AdaptiveBounds adaptive_bounds(std::span<const double> g_hist, double dist0, std::size_t dim, SumLimit limit) {
  const std::size_t extra = limit == SumLimit::ThroughKPlus1 ? 1 : 0;
  if (g_hist.size() < 1 + extra) throw DomainError("adaptive_bounds: gradient-bound history too short");
  for (double g : g_hist) {
    if (!(g > 0.0)) throw DomainError("adaptive_bounds: every G_i must be positive");
  }
  const std::size_t k = g_hist.size() - 1 - extra;
  double weighted = 0.0;
  for (std::size_t i = 0; i < g_hist.size(); ++i) weighted += std::sqrt(static_cast<double>(i) + 1.0) * g_hist[i] * g_hist[i];
  double plain = 0.0;
  for (std::size_t i = 0; i <= k; ++i) plain += g_hist[i] * g_hist[i];
  const double kp1 = static_cast<double>(k) + 1.0;
  const double root_d = std::sqrt(static_cast<double>(dim));
  return {k, 6.0 / std::pow(kp1, 1.25) * dist0 * root_d * std::sqrt(weighted),
          6.0 / kp1 * dist0 * root_d * std::sqrt(plain)};
}

ParamVector cube_root_allocation(const ParamVector& sq_sums, double c) {
  if (!(c > 0.0)) throw DomainError("cube_root_allocation: c must be positive");
  if (sq_sums.empty()) throw DomainError("cube_root_allocation: empty input");
  double norm = 0.0;
  for (double q : sq_sums) {
    if (!(q > 0.0) || !std::isfinite(q)) {
      throw DomainError("cube_root_allocation: every squared-gradient sum must be positive");
    }
    norm += std::cbrt(q * q);
  }
  const double scale = 1.0 / std::sqrt(norm / c);
  ParamVector s(sq_sums.size());
  for (std::size_t d = 0; d < s.size(); ++d) s[d] = scale * std::cbrt(sq_sums[d]);
  return s;
}

double allocation_objective(const ParamVector& sq_sums, const ParamVector& s) {
  require_same_dim(sq_sums.size(), s.size(), "allocation_objective");
  double sum = 0.0;
  for (std::size_t d = 0; d < s.size(); ++d) sum += sq_sums[d] / s[d];
  return sum;
}

double stationarity_spread(const ParamVector& sq_sums, const ParamVector& s) {
  require_same_dim(sq_sums.size(), s.size(), "stationarity_spread");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double mean = 0.0;
  for (std::size_t d = 0; d < s.size(); ++d) {
    const double mu = sq_sums[d] / (s[d] * s[d] * s[d]);
    lo = std::min(lo, mu);
    hi = std::max(hi, mu);
    mean += mu;
  }
  mean /= static_cast<double>(s.size());
  return (hi - lo) / mean;
}

ParamVector implicit_regularization_step(const ParamVector& x_k, const ParamVector& x0, const ParamVector& g_k,
                                         Step k) {
  require_same_dim(x_k.size(), x0.size(), "implicit_regularization_step");
  require_same_dim(x_k.size(), g_k.size(), "implicit_regularization_step");
  const auto kd = static_cast<double>(k);
  const double root_next = std::sqrt(kd + 1.0);
  const double pull = root_next - std::sqrt(kd);
  ParamVector out(x_k.size());
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = x_k[d] - (g_k[d] + pull * (x_k[d] - x0[d])) / root_next;
  return out;
}

ParamVector effective_step_form(const ParamVector& x0, double gamma_k, const ParamVector& g_k,
                                const ParamVector& weighted_prefix, Step k) {
  require_same_dim(x0.size(), g_k.size(), "effective_step_form");
  require_same_dim(x0.size(), weighted_prefix.size(), "effective_step_form");
  const double root_next = std::sqrt(static_cast<double>(k) + 1.0);
  ParamVector out(x0.size());
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = x0[d] - gamma_k * g_k[d] - weighted_prefix[d] / root_next;
  return out;
}

ParamVector sgd_sum_form(const ParamVector& x0, std::span<const double> gammas, const std::vector<ParamVector>& grads) {
  if (gammas.size() != grads.size()) throw DimensionError("sgd_sum_form: one step size per gradient");
  ParamVector out = x0;
  for (std::size_t i = 0; i < grads.size(); ++i) out = axpy(-gammas[i], grads[i], out);
  return out;
}

std::string render_report(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-40s %10s %14s  %s\n", "check", "cases", "max_slack", "result");
  os << line;
  os << std::string(74, '-') << '\n';
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-40s %10zu %14.6e  %s\n", r.name.c_str(), r.cases, r.max_slack,
                  r.passed ? "PASS" : "FAIL");
    os << line;
    if (!r.passed && !r.detail.empty()) os << "    " << r.detail << '\n';
  }
  return os.str();
}

}  // namespace madgrad::theory
