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

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "madgrad/bench/config.hpp"
#include "madgrad/bench/csv.hpp"
#include "madgrad/bench/presets.hpp"
#include "madgrad/bench/runner.hpp"
#include "madgrad/bench/verify.hpp"
#include "madgrad/error.hpp"

namespace madgrad::bench {
namespace {

const char* kSmallConfig = R"(; tiny quadratic run
[experiment]
name = small
steps = 60
seeds = 0..2
record_every = 20

[problem]
id = quadratic
dim = 3
samples = 10
seed = 4

[optimizer]
id = madgrad

[schedule]
kind = sqrt
lr = 0.1

[momentum]
kind = constant
c = 0.5
)";

TEST(Config, ParsesSmallConfig) {
  const RunConfig cfg = parse_config_text(kSmallConfig);
  EXPECT_EQ(cfg.name, "small");
  EXPECT_EQ(cfg.steps, 60u);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(cfg.problem.id, "quadratic");
  EXPECT_EQ(cfg.problem.dim, 3u);
  EXPECT_EQ(cfg.schedule.kind, "sqrt");
  EXPECT_DOUBLE_EQ(cfg.schedule.lr, 0.1);
  EXPECT_DOUBLE_EQ(cfg.momentum.c, 0.5);
}

TEST(Config, RenderRoundTrip) {
  const RunConfig cfg = parse_config_text(kSmallConfig);
  const std::string text = render_config(cfg);
  EXPECT_EQ(parse_config_text(text), cfg);
  EXPECT_EQ(render_config(parse_config_text(text)), text);
}

TEST(Config, UnknownKeysAndSectionsRejected) {
  EXPECT_THROW(parse_config_text("[experiment]\nsteps = 5\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("[nonsense]\nx = 1\n"), ConfigError);
  std::string bad = kSmallConfig;
  bad.replace(bad.find("id = madgrad"), 12, "id = lbfgs");
  EXPECT_THROW(validate(parse_config_text(bad)), ConfigError);
}

TEST(Config, SeedLists) {
  EXPECT_EQ(parse_seed_list("3"), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(parse_seed_list("0..3,7"), (std::vector<std::uint64_t>{0, 1, 2, 3, 7}));
  EXPECT_EQ(parse_seed_list("5, 1"), (std::vector<std::uint64_t>{5, 1}));
  EXPECT_THROW(parse_seed_list("4..2"), ConfigError);
  EXPECT_THROW(parse_seed_list("x"), ConfigError);
  EXPECT_THROW(parse_seed_list("-1"), ConfigError);
}

TEST(Config, StagewiseBoundariesScaleWithEpochLength) {
  ScheduleSpec s;
  s.kind = "stagewise";
  s.lr = 1.0;
  s.boundaries = {2, 3};
  s.steps_per_epoch = 10;
  s.factor = 0.1;
  const auto sched = make_schedule(s);
  EXPECT_EQ(step_size(sched, 19), 1.0);
  EXPECT_NEAR(step_size(sched, 20), 0.1, 1e-15);
  EXPECT_NEAR(step_size(sched, 30), 0.01, 1e-15);
}

TEST(Config, Theorem1ScheduleNeedsGamma) {
  ScheduleSpec s;
  s.kind = "theorem1";
  EXPECT_THROW(make_schedule(s), ConfigError);
  EXPECT_EQ(step_size(make_schedule(s, 0.25), 123), 0.25);
}

TEST(Presets, MatchShippedConfigFiles) {
  const std::filesystem::path dir = std::filesystem::path(MADGRAD_SOURCE_DIR) / "configs" / "presets";
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".ini") ++files;
  }
  EXPECT_EQ(files, presets().size());
  for (const auto& p : presets()) {
    const RunConfig on_disk = load_config(dir / (p.name + ".ini"));
    EXPECT_EQ(on_disk, p.config) << p.name;
    EXPECT_NO_THROW(validate(p.config)) << p.name;
  }
  EXPECT_NE(find_preset("theorem1-l1median"), nullptr);
  EXPECT_EQ(find_preset("no-such-preset"), nullptr);
}

TEST(Presets, Theorem1PresetSetup) {
  const RunConfig& cfg = find_preset("theorem1-l1median")->config;
  EXPECT_EQ(cfg.problem.id, "l1median");
  EXPECT_EQ(cfg.problem.dim, 10u);
  EXPECT_EQ(cfg.optimizer.id, "madgrad_theory");
  EXPECT_EQ(cfg.schedule.kind, "theorem1");
  EXPECT_EQ(cfg.momentum.kind, "decaying");
  EXPECT_EQ(cfg.seeds.size(), 50u);
  EXPECT_EQ(cfg.steps, 10'000u);
}

TEST(Runner, CsvIsDeterministicAndThreadIndependent) {
  const RunConfig cfg = parse_config_text(kSmallConfig);
  const std::string a = run_csv(run(cfg, 1));
  const std::string b = run_csv(run(cfg, 3));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), kCsvHeader);
  // Rows for k = 0, 20, 40, 60 per seed plus mean and 2se rows per k.
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 4 * 3 + 4 * 2);
}

TEST(Runner, AggregateOfIdenticalRecordsHasZeroSpread) {
  const RunConfig cfg = parse_config_text(kSmallConfig);
  const auto p = make_problem(cfg.problem);
  const RunRecord rec = run_seed(cfg, *p, 1);
  const auto agg = aggregate({rec, rec, rec});
  ASSERT_EQ(agg.size(), rec.rows.size());
  for (std::size_t i = 0; i < agg.size(); ++i) {
    EXPECT_EQ(agg[i].subopt.mean, rec.rows[i].subopt);
    EXPECT_EQ(agg[i].subopt.two_se, 0.0);
  }
}

TEST(Runner, MadgradConvergesOnQuadratic) {
  RunConfig cfg = parse_config_text(kSmallConfig);
  cfg.steps = 2000;
  cfg.record_every = 2000;
  const RunResult res = run(cfg, 1);
  EXPECT_LT(res.aggregate.back().subopt.mean, 1e-2 * res.aggregate.front().subopt.mean);
}

TEST(Runner, SparseProblemRequiresNoAveraging) {
  RunConfig cfg = parse_config_text(kSmallConfig);
  cfg.problem.id = "sparse_bow";
  cfg.problem.dim = 20;
  cfg.problem.samples = 40;
  cfg.momentum.c = 0.9;
  const auto p = make_problem(cfg.problem);
  EXPECT_THROW(check_compatibility(cfg, *p), ConfigError);
  cfg.momentum.c = 1.0;
  EXPECT_NO_THROW(check_compatibility(cfg, *p));
}

TEST(Runner, DivergenceIsReportedNotThrown) {
  RunConfig cfg = parse_config_text(kSmallConfig);
  cfg.optimizer.id = "sgd";
  cfg.momentum.c = 1.0;
  cfg.schedule.kind = "constant";
  cfg.schedule.lr = 50.0;
  const RunResult res = run(cfg, 1);
  for (const auto& rec : res.records) {
    EXPECT_TRUE(rec.diverged);
    EXPECT_FALSE(rec.divergence.empty());
  }
}

TEST(Sweep, GridLearningRates) {
  EXPECT_EQ(grid_learning_rates(-4, -3), (std::vector<double>{1e-4, 2.5e-4, 5e-4, 1e-3, 2.5e-3, 5e-3}));
  EXPECT_EQ(grid_learning_rates(0, 0), (std::vector<double>{1.0, 2.5, 5.0}));
  EXPECT_THROW(grid_learning_rates(1, 0), ConfigError);
}

TEST(Sweep, RowsSortedAndBestMarked) {
  RunConfig cfg = parse_config_text(kSmallConfig);
  const auto rows = grid_sweep(cfg, -1, -1, {0.0}, 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows.front().best);
  EXPECT_EQ(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.best; }), 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i - 1].final_mean_subopt, rows[i].final_mean_subopt);
  }
  std::ostringstream os;
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "lr,weight_decay,final_mean_subopt,final_2se,diverged,best");
}

TEST(Verify, SelectorsAndQuickSuites) {
  EXPECT_TRUE(is_verify_selector("all"));
  EXPECT_TRUE(is_verify_selector("lemmas"));
  EXPECT_FALSE(is_verify_selector("bogus"));
  EXPECT_THROW(run_verify("bogus"), ConfigError);
  EXPECT_TRUE(all_passed(run_verify("identities")));
  EXPECT_TRUE(all_passed(run_verify("support")));
}

}  // namespace
}  // namespace madgrad::bench
