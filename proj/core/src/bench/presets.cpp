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

#include "madgrad/bench/presets.hpp"

#include <algorithm>
#include <utility>

namespace madgrad::bench {

namespace {

struct MethodRow {
  const char* method;  // madgrad | adagrad | adam | sgd
  double lr;
  double decay;
};

struct Task {
  const char* name;
  const char* stand_in;
  ProblemSpec problem;
  Step steps;
  Step record_every;
  std::uint64_t num_seeds;
  ScheduleSpec schedule;  // lr filled per method
  std::vector<MethodRow> methods;
};

std::vector<std::uint64_t> seed_range(std::uint64_t n) {
  std::vector<std::uint64_t> s(n);
  for (std::uint64_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

RunConfig task_config(const Task& t, const MethodRow& m) {
  RunConfig cfg;
  cfg.name = std::string(t.name) + "-" + m.method;
  cfg.steps = t.steps;
  cfg.seeds = seed_range(t.num_seeds);
  cfg.record_every = t.record_every;
  cfg.output = cfg.name + ".csv";
  cfg.problem = t.problem;
  cfg.schedule = with_learning_rate(t.schedule, m.lr);
  cfg.optimizer.weight_decay = m.decay;
  cfg.momentum = MomentumSpec{.kind = "constant", .c = 0.1};
  const std::string method = m.method;
  if (method == "madgrad") {
    cfg.optimizer.id = "madgrad";
    // Sparse stand-ins run without iterate averaging.
    if (t.problem.id == "sparse_bow") cfg.momentum.c = 1.0;
  } else if (method == "adagrad") {
    cfg.optimizer.id = "adagrad_md";
  } else if (method == "adam") {
    cfg.optimizer.id = "adam";
  } else {
    cfg.optimizer.id = "sgdm";
  }
  return cfg;
}

ProblemSpec logistic(std::size_t dim, std::size_t n, std::uint64_t seed) {
  ProblemSpec p;
  p.id = "logistic";
  p.dim = dim;
  p.samples = n;
  p.seed = seed;
  return p;
}

ProblemSpec bow(std::size_t vocab, std::size_t docs, std::size_t fpd, std::uint64_t seed) {
  ProblemSpec p;
  p.id = "sparse_bow";
  p.dim = vocab;
  p.samples = docs;
  p.features_per_doc = fpd;
  p.seed = seed;
  return p;
}

ScheduleSpec stagewise(std::vector<Step> epochs, Step steps_per_epoch) {
  ScheduleSpec s;
  s.kind = "stagewise";
  s.boundaries = std::move(epochs);
  s.steps_per_epoch = steps_per_epoch;
  s.factor = 0.1;
  return s;
}

std::vector<Task> tasks() {
  std::vector<Task> out;

  // 300 epochs at 10 steps per epoch, tenthing at epochs 150 and 225.
  out.push_back({"cifar10", "logistic regression, D=20", logistic(20, 500, 11), 3000, 100, 10,
                 stagewise({150, 225}, 10),
                 {{"madgrad", 2.5e-4, 1e-4}, {"adagrad", 0.01, 1e-4}, {"adam", 0.00025, 1e-4}, {"sgd", 0.1, 1e-4}}});

  // 90 epochs at 10 steps per epoch, tenthing every 30 epochs.
  out.push_back({"imagenet", "logistic regression, D=50", logistic(50, 1000, 12), 900, 30, 5,
                 stagewise({30, 60}, 10),
                 {{"madgrad", 0.001, 2.5e-5}, {"adagrad", 0.01, 1e-4}, {"adam", 0.00025, 1e-4}, {"sgd", 0.1, 1e-4}}});

  // Flat schedule with one tenthing at epoch 40 of 50.
  ProblemSpec quad;
  quad.id = "quadratic";
  quad.dim = 32;
  quad.samples = 200;
  quad.seed = 13;
  out.push_back({"fastmri", "stochastic quadratic, D=32", quad, 500, 10, 5, stagewise({40}, 10),
                 {{"madgrad", 0.01, 0.0}, {"adagrad", 0.25, 0.0}, {"adam", 0.00025, 0.0}, {"sgd", 0.01, 0.0}}});

  // 60k updates and 4k warmup steps, both divided by 20.
  ScheduleSpec warm;
  warm.kind = "warmup";
  warm.warmup = 200;
  out.push_back({"iwslt14", "sparse bag-of-words, vocab 200", bow(200, 1000, 8, 14), 3000, 100, 10, warm,
                 {{"madgrad", 0.025, 5e-6}, {"adagrad", 0.25, 1e-5}, {"adam", 0.01, 0.05}, {"sgd", 1.0, 1e-5}}});

  // 20k updates divided by 10, linear decay to the end.
  ScheduleSpec poly;
  poly.kind = "poly";
  poly.end = 2000;
  poly.power = 1.0;
  out.push_back({"bookwiki", "sparse bag-of-words, vocab 500", bow(500, 2000, 16, 15), 2000, 100, 5, poly,
                 {{"madgrad", 0.005, 0.0}, {"adagrad", 0.01, 0.0}, {"adam", 0.001, 0.0}, {"sgd", 1.0, 0.0}}});
  return out;
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  for (const auto& t : tasks()) {
    for (const auto& m : t.methods) {
      out.push_back({std::string(t.name) + "-" + m.method,
                     std::string(m.method) + " with the " + t.name + " table settings on " + t.stand_in,
                     task_config(t, m)});
    }
  }

  {
    RunConfig cfg;
    cfg.name = "theorem1-l1median";
    cfg.steps = 10'000;
    cfg.seeds = seed_range(50);
    cfg.record_every = 100;
    cfg.output = cfg.name + ".csv";
    cfg.problem.id = "l1median";
    cfg.problem.dim = 10;
    cfg.problem.samples = 101;
    cfg.problem.seed = 2;
    cfg.optimizer.id = "madgrad_theory";
    cfg.schedule.kind = "theorem1";
    cfg.momentum = MomentumSpec{.kind = "decaying", .r = 0.5, .j = 1.0};
    out.push_back({cfg.name, "theoretical variant with the optimal constant step size on an l1 median", cfg});
  }
  // Per-method best step sizes of the {1, 2.5, 5} x 10^i grid, i = -4..1.
  const std::pair<const char*, double> compare[] = {
      {"madgrad", 0.005}, {"sgdm", 0.0025}, {"adam", 0.005}, {"adagrad_da", 2.5}};
  for (const auto& [id, lr] : compare) {
    RunConfig cfg;
    cfg.name = std::string("logistic-compare-") + id;
    cfg.steps = 4000;
    cfg.seeds = seed_range(20);
    cfg.record_every = 100;
    cfg.output = cfg.name + ".csv";
    cfg.problem = logistic(10, 400, 3);
    cfg.optimizer.id = id;
    cfg.schedule = stagewise({2000, 3000}, 1);
    cfg.schedule.lr = lr;
    cfg.momentum.c = 0.1;
    out.push_back({cfg.name, std::string(id) + " with its tuned step size on a small synthetic logistic regression", cfg});
  }
  {
    RunConfig cfg;
    cfg.name = "sparse-bow-madgrad";
    cfg.steps = 2000;
    cfg.seeds = seed_range(5);
    cfg.record_every = 100;
    cfg.output = cfg.name + ".csv";
    cfg.problem = bow(100, 500, 6, 4);
    cfg.optimizer.id = "madgrad";
    cfg.schedule.lr = 0.05;
    cfg.momentum.c = 1.0;
    out.push_back({cfg.name, "madgrad with sparse updates (c = 1)", cfg});
  }
  for (const char* id : {"adam", "amsgrad", "madgrad"}) {
    RunConfig cfg;
    cfg.name = std::string("adam-stress-") + id;
    cfg.steps = 5000;
    cfg.seeds = seed_range(5);
    cfg.record_every = 100;
    cfg.output = cfg.name + ".csv";
    cfg.problem.id = "adam_stress";
    cfg.problem.dim = 1;
    cfg.problem.samples = 11;
    cfg.optimizer.id = id;
    cfg.optimizer.beta1 = 0.0;
    cfg.optimizer.beta2 = 0.99;
    cfg.schedule.kind = "sqrt";
    cfg.schedule.lr = 0.1;
    cfg.momentum.c = 1.0;
    out.push_back({cfg.name, std::string(id) + " on the rare-large-gradient stress problem", cfg});
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(std::string_view name) {
  const auto& all = presets();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  return it == all.end() ? nullptr : &*it;
}

}  // namespace madgrad::bench
