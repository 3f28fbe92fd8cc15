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

#include "madgrad/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#include "madgrad/error.hpp"
#include "madgrad/optimizers.hpp"
#include "madgrad/schedules.hpp"
#include "madgrad/theory.hpp"

namespace madgrad::bench {

namespace {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first
/// exception by index is rethrown after every worker has joined.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Adds weight_decay * x to the gradient; sparse samples decay only their
/// listed coordinates.
GradSample decayed(const GradSample& g, const ParamVector& x, double wd) {
  if (wd == 0.0) return g;
  if (g.is_sparse()) {
    std::vector<SparseEntry> entries(g.entries().begin(), g.entries().end());
    for (auto& e : entries) e.value += wd * x[e.index];
    return GradSample::sparse(g.dimension(), std::move(entries));
  }
  return GradSample(axpy(wd, x, g.dense_values()));
}

class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual const ParamVector& x() const = 0;
  virtual void step(const GradSample& g, Step k, double gamma) = 0;
};

class MadgradStepper final : public Stepper {
 public:
  MadgradStepper(MadgradState st, MomentumSchedule c) : st_(std::move(st)), c_(std::move(c)) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step k, double gamma) override {
    st_ = madgrad_step(std::move(st_), g, gamma, c_.at(k + 1));
  }

 private:
  MadgradState st_;
  MomentumSchedule c_;
};

class TheoryStepper final : public Stepper {
 public:
  TheoryStepper(MadgradState st, MomentumSchedule c, StepSizeSchedule gamma)
      : st_(std::move(st)), c_(std::move(c)), gamma_(std::move(gamma)) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step k, double gamma) override {
    st_ = madgrad_theoretical_step(std::move(st_), g, gamma, c_.at(k + 1), gamma_.at(k + 1));
  }

 private:
  MadgradState st_;
  MomentumSchedule c_;
  StepSizeSchedule gamma_;
};

class HeavyBallStepper final : public Stepper {
 public:
  HeavyBallStepper(ParamVector x0, double beta, double wd) : st_(HeavyBallState::init(std::move(x0), 1.0, beta)), wd_(wd) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step, double gamma) override {
    st_.alpha = gamma;
    st_ = heavy_ball_step(std::move(st_), decayed(g, st_.x, wd_));
  }

 private:
  HeavyBallState st_;
  double wd_;
};

class InlineAvgStepper final : public Stepper {
 public:
  InlineAvgStepper(ParamVector x0, double c, double wd) : st_(InlineAvgState::init(std::move(x0), 1.0, c)), wd_(wd) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step, double gamma) override {
    st_.eta = gamma;
    st_ = inline_avg_step(std::move(st_), decayed(g, st_.x, wd_));
  }

 private:
  InlineAvgState st_;
  double wd_;
};

class AdamStepper final : public Stepper {
 public:
  AdamStepper(AdamState st, double wd) : st_(std::move(st)), wd_(wd) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step, double gamma) override {
    st_ = adam_step(std::move(st_), decayed(g, st_.x, wd_), gamma);
  }

 private:
  AdamState st_;
  double wd_;
};

class AdaGradStepper final : public Stepper {
 public:
  AdaGradStepper(AdaGradState st, double wd) : st_(std::move(st)), wd_(wd) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step, double gamma) override {
    st_ = adagrad_step(std::move(st_), decayed(g, st_.x, wd_), gamma);
  }

 private:
  AdaGradState st_;
  double wd_;
};

class DualAvgStepper final : public Stepper {
 public:
  DualAvgStepper(DualAvgState st, double wd) : st_(std::move(st)), wd_(wd) {}
  const ParamVector& x() const override { return st_.x; }
  void step(const GradSample& g, Step k, double gamma) override {
    st_ = dual_avg_step(std::move(st_), decayed(g, st_.x, wd_), lambda_weight(gamma, k));
  }

 private:
  DualAvgState st_;
  double wd_;
};

class VariantStepper final : public Stepper {
 public:
  VariantStepper(VariantState st, double wd) : st_(std::move(st)), wd_(wd) {}
  const ParamVector& x() const override { return st_.x(); }
  void step(const GradSample& g, Step, double gamma) override {
    st_ = variant_step(std::move(st_), decayed(g, st_.x(), wd_), gamma);
  }

 private:
  VariantState st_;
  double wd_;
};

double problem_g_bound(const RunConfig& cfg, const Problem& p) {
  if (cfg.optimizer.g_bound) return *cfg.optimizer.g_bound;
  if (auto g = p.g_inf_bound()) return *g;
  throw ConfigError("problem '" + p.name() + "' has no global gradient bound; set [optimizer] g_bound");
}

double theorem1_gamma(const RunConfig& cfg, const Problem& p) {
  const ParamVector x0 = initial_point(cfg.problem, p.dimension());
  ParamVector diff(x0.size());
  for (std::size_t d = 0; d < x0.size(); ++d) diff[d] = x0[d] - p.optimum()[d];
  const double dist0 = std::sqrt(dot(diff, diff));
  const auto b = theory::theorem1_rhs(
      {.k = cfg.steps, .dim = p.dimension(), .g_bound = problem_g_bound(cfg, p), .dist0 = dist0});
  if (!(b.gamma_opt > 0.0)) throw ConfigError("theorem1 schedule: x0 coincides with the optimum");
  return b.gamma_opt;
}

std::unique_ptr<Stepper> make_stepper(const RunConfig& cfg, const Problem& p, const StepSizeSchedule& gamma) {
  const auto& o = cfg.optimizer;
  ParamVector x0 = initial_point(cfg.problem, p.dimension());
  const MomentumSchedule c = make_momentum(cfg.momentum);
  const double wd = o.weight_decay;
  const auto constant_c = [&]() {
    if (cfg.momentum.kind != "constant") throw ConfigError("optimizer '" + o.id + "' needs a constant momentum c");
    return cfg.momentum.c;
  };

  if (o.id == "madgrad") {
    return std::make_unique<MadgradStepper>(MadgradState::init(std::move(x0), o.eps.value_or(kDefaultMadgradEps), wd), c);
  }
  if (o.id == "madgrad_theory") {
    return std::make_unique<TheoryStepper>(MadgradState::init_theoretical(std::move(x0), problem_g_bound(cfg, p)), c,
                                           gamma);
  }
  if (o.id == "sgd") return std::make_unique<HeavyBallStepper>(std::move(x0), 0.0, wd);
  if (o.id == "sgdm") return std::make_unique<HeavyBallStepper>(std::move(x0), heavy_ball_beta(constant_c()), wd);
  if (o.id == "inline_avg") return std::make_unique<InlineAvgStepper>(std::move(x0), constant_c(), wd);
  if (o.id == "adam" || o.id == "amsgrad") {
    return std::make_unique<AdamStepper>(
        AdamState::init(std::move(x0), o.beta1, o.beta2, o.eps.value_or(1e-8), o.id == "amsgrad"), wd);
  }
  if (o.id == "adagrad_md" || o.id == "adagrad_da") {
    const auto form = o.id == "adagrad_md" ? AdaGradForm::MirrorDescent : AdaGradForm::DualAveraging;
    return std::make_unique<AdaGradStepper>(AdaGradState::init(form, std::move(x0), o.eps.value_or(1e-10)), wd);
  }
  if (o.id == "dual_avg" || o.id == "da_mom") {
    std::optional<MomentumSchedule> avg;
    if (o.id == "da_mom") avg = c;
    return std::make_unique<DualAvgStepper>(
        DualAvgState::init(std::move(x0), BetaRule{o.beta_scale, o.beta_power}, std::move(avg)), wd);
  }
  static const std::map<std::string, WeightingVariant> variants{
      {"variant_unweighted", WeightingVariant::UnweightedDenominator},
      {"variant_weighted_denominator", WeightingVariant::WeightedDenominator},
      {"variant_weighted_numerator", WeightingVariant::WeightedNumerator},
      {"variant_cube_root", WeightingVariant::CubeRoot},
  };
  if (auto it = variants.find(o.id); it != variants.end()) {
    return std::make_unique<VariantStepper>(
        VariantState::init(it->second, std::move(x0), o.eps.value_or(kDefaultMadgradEps)), wd);
  }
  throw ConfigError("optimizer: unknown id '" + o.id + "'");
}

StepSizeSchedule schedule_for(const RunConfig& cfg, const Problem& p) {
  std::optional<double> g1;
  if (cfg.schedule.kind == "theorem1") g1 = theorem1_gamma(cfg, p);
  return make_schedule(cfg.schedule, g1);
}

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe out;
  const auto n = static_cast<double>(v.size());
  // Centred on the first value so a constant column averages exactly.
  double shift = 0.0;
  for (double x : v) shift += x - v.front();
  out.mean = v.front() + shift / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.two_se = 2.0 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

}  // namespace

std::unique_ptr<Problem> make_problem(const ProblemSpec& s) {
  if (s.id == "l1median") return std::make_unique<L1Median>(L1Median::generate(s.dim, s.samples, s.seed, s.center));
  if (s.id == "quadratic") {
    return std::make_unique<StochasticQuadratic>(StochasticQuadratic::generate(s.dim, s.samples, s.seed, s.center));
  }
  if (s.id == "logistic") {
    if (!s.fixture.empty()) {
      std::ifstream in(s.fixture);
      if (!in) throw ConfigError("cannot open logistic fixture '" + s.fixture + "'");
      return std::make_unique<SyntheticLogistic>(read_logistic_fixture(in));
    }
    return std::make_unique<SyntheticLogistic>(make_logistic_fixture(s.dim, s.samples, s.seed, s.mu, s.label_noise));
  }
  if (s.id == "sparse_bow") {
    return std::make_unique<SparseBagOfWords>(
        SparseBagOfWords::generate(s.dim, s.samples, s.features_per_doc, s.seed, s.mu));
  }
  if (s.id == "adam_stress") return std::make_unique<AdamStress>(s.dim);
  throw ConfigError("problem: unknown id '" + s.id + "'");
}

ParamVector initial_point(const ProblemSpec& spec, std::size_t dim) {
  ParamVector x0(dim);
  for (auto& v : x0) v = spec.init;
  return x0;
}

void check_compatibility(const RunConfig& cfg, const Problem& p) {
  const auto& o = cfg.optimizer;
  if (p.sparse_gradients() && o.id == "madgrad" && !(cfg.momentum.kind == "constant" && cfg.momentum.c == 1.0)) {
    throw ConfigError("madgrad on sparse gradients requires constant momentum c = 1 (no iterate averaging)");
  }
  if (o.id == "madgrad_theory") {
    if (o.eps.value_or(0.0) != 0.0) throw ConfigError("madgrad_theory: eps must be 0 when the gradient bound is used");
    if (o.weight_decay != 0.0) throw ConfigError("madgrad_theory: weight decay is not part of the analysed method");
    (void)problem_g_bound(cfg, p);
  }
  if (cfg.schedule.kind == "theorem1") (void)problem_g_bound(cfg, p);
}

RunRecord run_seed(const RunConfig& cfg, const Problem& p, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  check_compatibility(cfg, p);
  const StepSizeSchedule gamma = schedule_for(cfg, p);
  auto stepper = make_stepper(cfg, p, gamma);
  Rng rng(seed);

  RunRecord rec;
  rec.seed = seed;
  const double initial = suboptimality(p, stepper->x());
  const double limit = initial > 0.0 ? 1e6 * initial : std::numeric_limits<double>::infinity();

  for (Step k = 0; k <= cfg.steps; ++k) {
    const ParamVector& x = stepper->x();
    const SampleId xi = p.sample(rng);
    const GradSample g = p.grad(x, xi);
    const bool finite = x.all_finite() && g.all_finite();
    if (finite && k % cfg.record_every != 0 && k != cfg.steps) {
      stepper->step(g, k, gamma.at(k));
      continue;
    }
    RunRow row;
    row.k = k;
    row.loss = p.loss(x, xi);
    row.subopt = suboptimality(p, x);
    row.grad_inf = g.inf_norm();
    row.gamma = gamma.at(k);
    row.lambda = lambda_weight(row.gamma, k);
    rec.rows.push_back(row);
    if (!finite || !std::isfinite(row.subopt)) {
      rec.diverged = true;
      rec.divergence = "non-finite value at step " + std::to_string(k);
      break;
    }
    if (row.subopt > limit) {
      rec.diverged = true;
      rec.divergence = "suboptimality above 1e6 x initial at step " + std::to_string(k);
      break;
    }
    if (k < cfg.steps) stepper->step(g, k, row.gamma);
  }
  rec.final_x = stepper->x();
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

RunResult run(const RunConfig& cfg, const Problem& p, unsigned threads) {
  validate(cfg);
  check_compatibility(cfg, p);
  RunResult result;
  result.config = cfg;
  result.dim = p.dimension();
  if (cfg.schedule.kind == "theorem1") result.gamma_theorem1 = theorem1_gamma(cfg, p);
  result.records.resize(cfg.seeds.size());
  parallel_for(cfg.seeds.size(), threads, [&](std::size_t i) { result.records[i] = run_seed(cfg, p, cfg.seeds[i]); });
  result.aggregate = aggregate(result.records);
  return result;
}

RunResult run(const RunConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto p = make_problem(cfg.problem);
  return run(cfg, *p, threads);
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
  std::map<Step, std::vector<const RunRow*>> by_k;
  for (const auto& rec : records) {
    for (const auto& row : rec.rows) by_k[row.k].push_back(&row);
  }
  std::vector<AggregateRow> out;
  out.reserve(by_k.size());
  for (const auto& [k, rows] : by_k) {
    AggregateRow a;
    a.k = k;
    a.n = rows.size();
    const auto column = [&](double RunRow::*field) {
      std::vector<double> v;
      v.reserve(rows.size());
      for (const RunRow* r : rows) v.push_back(r->*field);
      return mean_se(v);
    };
    a.loss = column(&RunRow::loss);
    a.subopt = column(&RunRow::subopt);
    a.grad_inf = column(&RunRow::grad_inf);
    a.gamma = column(&RunRow::gamma);
    a.lambda = column(&RunRow::lambda);
    out.push_back(a);
  }
  return out;
}

std::vector<double> grid_learning_rates(int i_min, int i_max) {
  if (i_min > i_max) throw ConfigError("sweep: empty exponent range");
  if (i_min < -300 || i_max > 300) throw ConfigError("sweep: exponent out of range");
  std::vector<double> lrs;
  for (int i = i_min; i <= i_max; ++i) {
    // Dividing by an exact power of ten reproduces the decimal literals.
    const double scale = std::pow(10.0, std::abs(i));
    for (double mantissa : {1.0, 2.5, 5.0}) lrs.push_back(i < 0 ? mantissa / scale : mantissa * scale);
  }
  return lrs;
}

std::vector<SweepRow> grid_sweep(const RunConfig& base, int i_min, int i_max, const std::vector<double>& decays,
                                 unsigned threads) {
  const auto lrs = grid_learning_rates(i_min, i_max);
  const std::vector<double> wds = decays.empty() ? std::vector<double>{base.optimizer.weight_decay} : decays;
  validate(base);
  const auto p = make_problem(base.problem);

  std::vector<SweepRow> rows;
  for (double wd : wds) {
    for (double lr : lrs) {
      RunConfig cfg = base;
      cfg.schedule = with_learning_rate(cfg.schedule, lr);
      cfg.optimizer.weight_decay = wd;
      const RunResult res = run(cfg, *p, threads);
      SweepRow row;
      row.lr = lr;
      row.weight_decay = wd;
      std::vector<double> finals;
      for (const auto& rec : res.records) {
        row.diverged = row.diverged || rec.diverged;
        finals.push_back(rec.rows.back().subopt);
      }
      const MeanSe m = mean_se(finals);
      row.final_mean_subopt = m.mean;
      row.final_two_se = m.two_se;
      if (!std::isfinite(m.mean)) row.diverged = true;
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.diverged != b.diverged) return !a.diverged;
    if (a.diverged) return false;
    return a.final_mean_subopt < b.final_mean_subopt;
  });
  if (!rows.empty()) rows.front().best = true;
  return rows;
}

}  // namespace madgrad::bench
