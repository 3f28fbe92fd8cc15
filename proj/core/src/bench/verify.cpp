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

#include "madgrad/bench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "madgrad/bench/presets.hpp"
#include "madgrad/bench/runner.hpp"
#include "madgrad/error.hpp"
#include "madgrad/optimizers.hpp"
#include "madgrad/problems.hpp"
#include "madgrad/text.hpp"

namespace madgrad::bench {

using theory::ReportRow;

namespace {

ParamVector random_normal(Rng& rng, std::size_t dim, double scale = 1.0) {
  ParamVector v(dim);
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

ReportRow tolerance_row(std::string name, std::size_t cases, double worst, double tol, std::string detail = {}) {
  ReportRow r{std::move(name), cases, worst, worst <= tol, {}};
  if (!r.passed) r.detail = detail.empty() ? "max deviation " + text::to_decimal(worst) + " > " + text::to_decimal(tol)
                                           : std::move(detail);
  return r;
}

double max_abs_diff(const ParamVector& a, const ParamVector& b) {
  double m = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) m = std::max(m, std::abs(a[d] - b[d]));
  return m;
}

std::string describe_case(std::uint64_t seed, std::size_t index) {
  return "seed " + std::to_string(seed) + ", case " + std::to_string(index);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"lemmas",     "support",    "lyapunov", "theorem1",
                                               "cube-root", "identities", "momentum", "sparsity"};
  return suites;
}

bool is_verify_selector(std::string_view selector) {
  if (selector == "all") return true;
  const auto& s = verify_suites();
  return std::find(s.begin(), s.end(), selector) != s.end();
}

ReportRow verify_error_sum_lemma(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  theory::Check total;
  std::string detail;
  for (std::size_t c = 0; c < cases; ++c) {
    Rng local = rng.fork(c);
    const std::size_t steps = 1 + local.index(50);
    const std::size_t dim = 1 + local.index(4);
    const double G = 2.0;
    std::vector<double> lambdas(steps);
    if (c % 2 == 0) {
      const double gamma = local.uniform(0.01, 2.0);
      for (std::size_t i = 0; i < steps; ++i) lambdas[i] = gamma * std::sqrt(static_cast<double>(i) + 1.0);
    } else {
      lambdas[0] = local.uniform(0.01, 1.0);
      for (std::size_t i = 1; i < steps; ++i) lambdas[i] = lambdas[i - 1] + local.uniform(0.0, 0.5);
    }
    std::vector<ParamVector> rows(steps, ParamVector(dim));
    for (auto& row : rows) {
      for (auto& g : row) g = local.index(5) == 0 ? 0.0 : local.uniform(-G, G);
    }
    const auto check = theory::check_error_sum_lemma(lambdas, rows, G);
    if (!check.passed && detail.empty()) detail = "violated at " + describe_case(seed, c);
    total.merge(check);
  }
  return {"error-sum lemma", cases, total.max_slack, total.passed, detail};
}

ReportRow verify_ck_lemma(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  bool ok = true;
  std::string detail;
  for (std::size_t c = 0; c < cases; ++c) {
    Rng local = rng.fork(c);
    const double r = local.uniform(0.001, 0.999);
    const double j = c % 2 == 0 ? static_cast<double>(local.index(10)) : local.uniform(0.0, 10.0);
    const Step kmax = 1 + local.index(200);
    const double margin = ck_lemma_margin(r, j, kmax);
    worst = std::max(worst, -margin);
    if (margin < -1e-12) {
      if (ok) {
        std::ostringstream os;
        os << "violated at r=" << text::to_decimal(r) << " j=" << text::to_decimal(j) << " k_max=" << kmax;
        detail = os.str();
      }
      ok = false;
    }
  }
  return {"c_k iterate-weighting lemma", cases, worst, ok, detail};
}

ReportRow verify_summation_property(Step k_max) {
  const bool ok = theory::check_summation_property(k_max);
  return {"summation property", static_cast<std::size_t>(k_max) + 1, 0.0, ok,
          ok ? "" : "partial sum exceeded 2/3 (k+2)^{3/2}"};
}

std::vector<ReportRow> verify_support(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  double dec = -1.0, grad = 0.0, smooth = -1.0;
  bool dec_ok = true, grad_ok = true, smooth_ok = true;
  for (std::size_t c = 0; c < cases; ++c) {
    Rng local = rng.fork(c);
    const std::size_t dim = 1 + local.index(8);
    ParamVector a(dim), a_next(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      a[d] = local.uniform(0.05, 3.0);
      a_next[d] = c % 4 == 0 ? a[d] : a[d] + local.uniform(0.0, 2.0);
    }
    const ParamVector s = random_normal(local, dim, 2.0);
    const ParamVector delta = c % 5 == 0 ? ParamVector(dim) : random_normal(local, dim);
    const ParamVector x0 = random_normal(local, dim);
    const auto rep = theory::check_support_properties(a, a_next, s, delta, x0);
    dec = std::max(dec, rep.decrease_slack);
    grad = std::max(grad, rep.gradient_rel_err);
    smooth = std::max(smooth, rep.smoothness_slack);
    dec_ok = dec_ok && rep.decrease;
    grad_ok = grad_ok && rep.gradient_identity;
    smooth_ok = smooth_ok && rep.smoothness;
  }
  return {{"support: decrease under growth", cases, dec, dec_ok, dec_ok ? "" : "V_{a_next} exceeded V_a"},
          {"support: gradient identity", cases, grad, grad_ok, grad_ok ? "" : "finite differences disagree"},
          {"support: smoothness", cases, smooth, smooth_ok, smooth_ok ? "" : "quadratic upper bound violated"}};
}

ReportRow verify_lyapunov(std::size_t steps, std::size_t seeds, bool optimal_comparator, std::uint64_t seed) {
  const L1Median p = L1Median::generate(10, 101, seed);
  const ParamVector x0(p.dimension());
  ParamVector diff(x0.size());
  for (std::size_t d = 0; d < x0.size(); ++d) diff[d] = x0[d] - p.optimum()[d];
  const double gamma = theory::theorem1_rhs({.k = steps, .dim = p.dimension(), .g_bound = 1.0,
                                             .dist0 = std::sqrt(dot(diff, diff))})
                           .gamma_opt;
  theory::Check total;
  std::string detail;
  std::size_t cases = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    ParamVector comparator = p.optimum();
    if (!optimal_comparator) {
      Rng perturb(seed + 1000 + s);
      comparator = axpy(1.0, random_normal(perturb, comparator.size()), comparator);
    }
    const auto trace = theory::trace_theoretical_madgrad(p, x0, gamma, steps, seed + s);
    for (const auto& step : trace) {
      const auto check = theory::check_lyapunov_step(step, p, comparator);
      if (!check.passed && detail.empty()) {
        detail = "violated at seed " + std::to_string(seed + s) + ", k=" + std::to_string(step.k);
      }
      total.merge(check);
      ++cases;
    }
  }
  return {optimal_comparator ? "Lyapunov step (x*)" : "Lyapunov step (other comparator)", cases, total.max_slack,
          total.passed, detail};
}

ReportRow verify_theorem1_empirical(unsigned threads) {
  const Preset* preset = find_preset("theorem1-l1median");
  const RunConfig& cfg = preset->config;
  const auto p = make_problem(cfg.problem);
  const RunResult res = run(cfg, *p, threads);
  const ParamVector x0 = initial_point(cfg.problem, p->dimension());
  ParamVector diff(x0.size());
  for (std::size_t d = 0; d < x0.size(); ++d) diff[d] = x0[d] - p->optimum()[d];
  const double dist0 = std::sqrt(dot(diff, diff));

  double worst = -std::numeric_limits<double>::infinity();
  std::size_t cases = 0;
  std::string detail;
  for (const auto& row : res.aggregate) {
    if (row.k < 100) continue;
    const double bound = theory::theorem1_rhs({.k = row.k, .dim = p->dimension(), .g_bound = 1.0, .dist0 = dist0}).bound;
    const double lhs = row.subopt.mean - row.subopt.two_se;
    const double slack = (lhs - bound) / bound;
    if (slack > 0.0 && detail.empty()) {
      detail = "mean - 2se " + text::to_decimal(lhs) + " above bound " + text::to_decimal(bound) + " at k=" +
               std::to_string(row.k);
    }
    worst = std::max(worst, slack);
    ++cases;
  }
  for (const auto& rec : res.records) {
    if (rec.diverged) detail = "seed " + std::to_string(rec.seed) + " diverged";
  }
  const bool ok = worst <= 0.0 && cases > 0 && detail.empty();
  return {"rate bound (50 seeds, l1 median)", cases, worst, ok, detail};
}

ReportRow verify_gamma_opt_minimizes_prebound() {
  struct Case {
    Step k;
    std::size_t dim;
    double G, dist0;
  };
  const Case cases[] = {{1, 1, 1.0, 1.0}, {100, 10, 1.0, 3.0}, {10'000, 4, 2.0, 0.5}, {57, 3, 0.3, 7.0}};
  // Log grid over +-3 decades, 200 points per decade.
  constexpr int kPerDecade = 200;
  const double ratio = std::pow(10.0, 1.0 / kPerDecade);
  double worst = -std::numeric_limits<double>::infinity();
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto b = theory::theorem1_rhs(
        {.k = c.k, .dim = c.dim, .g_bound = c.G, .dist0 = c.dist0, .convention = theory::IndexConvention::Derivation});
    double best_gamma = 0.0, best = std::numeric_limits<double>::infinity();
    for (int i = -3 * kPerDecade; i <= 3 * kPerDecade; ++i) {
      const double gamma = b.gamma_opt * std::pow(10.0, static_cast<double>(i) / kPerDecade);
      const double v = theory::theorem1_prebound(gamma, c.k, c.dim, c.G, c.dist0);
      if (v < best) {
        best = v;
        best_gamma = gamma;
      }
    }
    const double at_opt = theory::theorem1_prebound(b.gamma_opt, c.k, c.dim, c.G, c.dist0);
    // Minimizer within one grid cell; value at gamma_opt no worse than the grid and equal to the bound.
    const double cell = std::abs(std::log(best_gamma / b.gamma_opt)) / std::log(ratio);
    const double value_gap = (at_opt - best) / best;
    const double bound_gap = std::abs(at_opt - b.bound) / b.bound;
    worst = std::max({worst, value_gap, bound_gap});
    if (cell > 1.0 + 1e-9 || value_gap > 1e-12 || bound_gap > 1e-12) {
      ok = false;
      if (detail.empty()) detail = "k=" + std::to_string(c.k) + ": grid minimizer away from gamma_opt";
    }
  }
  return {"gamma_opt minimizes the pre-bound", std::size(cases), worst, ok, detail};
}

std::vector<ReportRow> verify_cube_root(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  double norm_err = 0.0, spread = 0.0, obj_gap = -std::numeric_limits<double>::infinity();
  constexpr std::size_t kProbes = 10'000;
  for (std::size_t c = 0; c < cases; ++c) {
    Rng local = rng.fork(c);
    const std::size_t dim = 1 + local.index(8);
    ParamVector q(dim);
    for (auto& v : q) v = std::exp(local.normal());
    const double budget = local.uniform(0.1, 10.0);
    const ParamVector s = theory::cube_root_allocation(q, budget);
    norm_err = std::max(norm_err, std::abs(dot(s, s) - budget));
    spread = std::max(spread, theory::stationarity_spread(q, s));
    const double best = theory::allocation_objective(q, s);
    if (c < 10) {
      // Random feasible points: positive directions scaled onto the sphere.
      for (std::size_t i = 0; i < kProbes; ++i) {
        ParamVector t(dim);
        for (auto& v : t) v = local.uniform(1e-3, 1.0);
        const double scale = std::sqrt(budget / dot(t, t));
        for (auto& v : t) v *= scale;
        obj_gap = std::max(obj_gap, (best - theory::allocation_objective(q, t)) / best);
      }
    }
  }
  return {tolerance_row("cube root: norm constraint", cases, norm_err, 1e-10),
          tolerance_row("cube root: stationarity spread", cases, spread, 1e-9),
          tolerance_row("cube root: beats random feasible points", 10 * kProbes, obj_gap, 1e-12)};
}

std::vector<ReportRow> verify_identities(std::size_t steps, std::uint64_t seed) {
  constexpr std::size_t kDim = 10;
  Rng rng(seed);
  const ParamVector x0 = random_normal(rng, kDim);

  // Plain dual averaging, lambda = 1 and beta_{k+1} = sqrt(k+1).
  double implicit_dev = 0.0;
  {
    DualAvgState da = DualAvgState::init(x0);
    ParamVector x = x0;
    ParamVector sum(kDim);
    for (Step k = 0; k < steps; ++k) {
      const ParamVector g = random_normal(rng, kDim);
      x = theory::implicit_regularization_step(x, x0, g, k);
      da = dual_avg_step(std::move(da), g, 1.0);
      sum = axpy(1.0, g, sum);
      const ParamVector direct = axpy(-1.0 / std::sqrt(static_cast<double>(k) + 1.0), sum, x0);
      implicit_dev = std::max({implicit_dev, max_abs_diff(x, direct), max_abs_diff(da.x, direct)});
    }
  }

  // lambda_k = gamma_k sqrt(k+1) with a decaying gamma.
  double effective_dev = 0.0;
  {
    const StepSizeSchedule gamma(sched::SqrtDecay{0.5, 0.0});
    DualAvgState da = DualAvgState::init(x0);
    ParamVector prefix(kDim);
    for (Step k = 0; k < steps; ++k) {
      const ParamVector g = random_normal(rng, kDim);
      const double gk = gamma.at(k);
      const double lambda = lambda_weight(gk, k);
      da = dual_avg_step(std::move(da), g, lambda);
      const ParamVector form = theory::effective_step_form(x0, gk, g, prefix, k);
      effective_dev = std::max(effective_dev, max_abs_diff(da.x, form));
      prefix = axpy(lambda, g, prefix);
    }
  }

  double sgd_dev = 0.0;
  {
    HeavyBallState sgd = HeavyBallState::init(x0, 1.0, 0.0);
    std::vector<double> gammas;
    std::vector<ParamVector> grads;
    const StepSizeSchedule gamma(sched::Stagewise{0.1, {steps / 2}, 0.1});
    for (Step k = 0; k < steps; ++k) {
      grads.push_back(random_normal(rng, kDim));
      gammas.push_back(gamma.at(k));
      sgd.alpha = gammas.back();
      sgd = heavy_ball_step(std::move(sgd), grads.back());
    }
    sgd_dev = max_abs_diff(sgd.x, theory::sgd_sum_form(x0, gammas, grads));
  }

  return {tolerance_row("implicit-regularization rewrite", steps, implicit_dev, 1e-10),
          tolerance_row("effective-step decomposition", steps, effective_dev, 1e-10),
          tolerance_row("SGD sum form", steps, sgd_dev, 1e-10)};
}

ReportRow verify_momentum_equivalence(std::size_t steps, std::size_t dim, std::uint64_t seed) {
  double worst = 0.0;
  std::size_t cases = 0;
  for (double c : {0.1, 0.5, 0.9, 1.0}) {
    for (double eta : {1.0, 0.05}) {
      Rng rng(seed);
      const ParamVector x0 = random_normal(rng, dim);
      InlineAvgState inl = InlineAvgState::init(x0, eta, c);
      HeavyBallState hb = HeavyBallState::init(x0, c * eta, heavy_ball_beta(c));
      for (std::size_t k = 0; k < steps; ++k) {
        const ParamVector g = random_normal(rng, dim);
        inl = inline_avg_step(std::move(inl), g);
        hb = heavy_ball_step(std::move(hb), g);
        worst = std::max(worst, max_abs_diff(inl.x, hb.x));
      }
      ++cases;
    }
  }
  return tolerance_row("inline averaging == heavy ball", cases * steps, worst, 1e-9);
}

std::vector<ReportRow> verify_sparsity(std::size_t steps, std::uint64_t seed) {
  const SparseBagOfWords p = SparseBagOfWords::generate(100, 500, 6, seed, 1e-2);
  MadgradState st = MadgradState::init(ParamVector(p.dimension()), kDefaultMadgradEps, 1e-4);
  Rng rng(seed);
  std::size_t changed = 0;
  std::string detail;
  for (std::size_t k = 0; k < steps; ++k) {
    const GradSample g = p.grad(st.x, p.sample(rng));
    const MadgradState before = st;
    st = madgrad_step(std::move(st), g, 0.05, 1.0);
    std::vector<bool> touched(p.dimension(), false);
    for (const auto& e : g.entries()) touched[e.index] = true;
    for (std::size_t d = 0; d < p.dimension(); ++d) {
      if (touched[d]) continue;
      if (st.s[d] != before.s[d] || st.nu[d] != before.nu[d] || st.z[d] != before.z[d] || st.x[d] != before.x[d]) {
        if (detail.empty()) detail = "coordinate " + std::to_string(d) + " changed at step " + std::to_string(k);
        ++changed;
      }
    }
  }

  bool rejected = false;
  {
    RunConfig cfg;
    cfg.problem.id = "sparse_bow";
    cfg.optimizer.id = "madgrad";
    cfg.momentum.c = 0.9;
    try {
      check_compatibility(cfg, p);
    } catch (const ConfigError&) {
      rejected = true;
    }
    try {
      (void)madgrad_step(MadgradState::init(ParamVector(p.dimension())), p.grad(ParamVector(p.dimension()), 0), 0.1,
                         0.9);
      rejected = false;
    } catch (const ConfigError&) {
    }
  }
  return {{"sparse updates leave other coordinates", steps, static_cast<double>(changed), changed == 0, detail},
          {"sparse gradients with c != 1 rejected", 2, 0.0, rejected, rejected ? "" : "configuration accepted"}};
}

std::vector<ReportRow> run_verify(std::string_view selector, const VerifyOptions& opts) {
  if (!is_verify_selector(selector)) throw ConfigError("unknown verify suite '" + std::string(selector) + "'");
  const bool all = selector == "all";
  const auto want = [&](std::string_view s) { return all || selector == s; };
  const std::uint64_t seed = opts.seed;
  std::vector<ReportRow> rows;
  const auto add = [&](auto&& more) {
    if constexpr (std::is_same_v<std::decay_t<decltype(more)>, ReportRow>) {
      rows.push_back(std::forward<decltype(more)>(more));
    } else {
      for (auto& r : more) rows.push_back(std::move(r));
    }
  };
  if (want("lemmas")) {
    add(verify_error_sum_lemma(10'000, seed));
    add(verify_ck_lemma(10'000, seed + 1));
    add(verify_summation_property(100'000));
  }
  if (want("support")) add(verify_support(1000, seed + 2));
  if (want("lyapunov")) {
    add(verify_lyapunov(1000, 5, true, seed + 3));
    add(verify_lyapunov(1000, 5, false, seed + 3));
  }
  if (want("theorem1")) {
    add(verify_gamma_opt_minimizes_prebound());
    add(verify_theorem1_empirical(opts.threads));
  }
  if (want("cube-root")) add(verify_cube_root(100, seed + 4));
  if (want("identities")) add(verify_identities(1000, seed + 5));
  if (want("momentum")) add(verify_momentum_equivalence(1000, 10, seed + 6));
  if (want("sparsity")) add(verify_sparsity(1000, seed + 7));
  return rows;
}

bool all_passed(const std::vector<ReportRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.passed; });
}

}  // namespace madgrad::bench
