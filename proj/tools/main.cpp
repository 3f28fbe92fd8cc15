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

// madgrad-bench: seeded optimizer runs, learning-rate sweeps and the
// numerical verification suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "madgrad/bench/config.hpp"
#include "madgrad/bench/csv.hpp"
#include "madgrad/bench/presets.hpp"
#include "madgrad/bench/runner.hpp"
#include "madgrad/bench/verify.hpp"
#include "madgrad/error.hpp"
#include "madgrad/problems.hpp"

namespace fs = std::filesystem;
using namespace madgrad;
using namespace madgrad::bench;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kOutDirEnv = "MADGRAD_BENCH_OUT_DIR";

RunConfig resolve_config(const std::string& ref) {
  constexpr std::string_view prefix = "preset:";
  if (ref.rfind(prefix, 0) == 0) {
    const auto name = ref.substr(prefix.size());
    const Preset* p = find_preset(name);
    if (!p) throw ConfigError("unknown preset '" + name + "' (see list-presets)");
    return p->config;
  }
  if (const Preset* p = find_preset(ref); p && !fs::exists(ref)) return p->config;
  return load_config(ref);
}

/// --out-dir, then the environment, then the path in the config as given.
fs::path output_path(const std::string& out_dir, const std::string& configured, const std::string& fallback) {
  const std::string file = configured.empty() ? fallback : configured;
  std::string dir = out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kOutDirEnv); env && *env) dir = env;
  }
  if (dir.empty()) return file;
  return fs::path(dir) / fs::path(file).filename();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MADGRAD benchmark runner and verification suite"};
  app.require_subcommand(1);

  unsigned threads = 0;
  std::string out_dir;
  app.add_option("--threads", threads, "worker threads (0: all cores)");
  app.add_option("--out-dir", out_dir, std::string("output directory; overrides ") + kOutDirEnv);

  std::string run_ref;
  auto* run_cmd = app.add_subcommand("run", "run a config file or preset:NAME");
  run_cmd->add_option("config", run_ref, "config path or preset:NAME")->required();

  std::string sweep_ref;
  int i_min = -4, i_max = -3;
  std::vector<double> decays;
  auto* sweep_cmd = app.add_subcommand("sweep", "learning-rate grid {1, 2.5, 5} x 10^i crossed with decays");
  sweep_cmd->add_option("config", sweep_ref, "config path or preset:NAME")->required();
  sweep_cmd->add_option("--i-min", i_min, "smallest exponent")->required();
  sweep_cmd->add_option("--i-max", i_max, "largest exponent")->required();
  sweep_cmd->add_option("--decays", decays, "weight decay values (default: the config's)")->delimiter(',');

  std::string suite;
  std::uint64_t verify_seed = VerifyOptions{}.seed;
  auto* verify_cmd = app.add_subcommand("verify", "numerical checks of the analysis");
  verify_cmd->add_option("suite", suite, "all, lemmas, support, lyapunov, theorem1, cube-root, identities, momentum, sparsity")
      ->required();
  verify_cmd->add_option("--seed", verify_seed, "fuzzing seed");

  std::string write_dir;
  auto* list_cmd = app.add_subcommand("list-presets", "list shipped presets");
  list_cmd->add_option("--write", write_dir, "also write each preset as an INI file into this directory");

  std::size_t fx_dim = 10, fx_samples = 400;
  std::uint64_t fx_seed = 1;
  double fx_mu = 1e-2, fx_noise = 0.1;
  std::string fx_out;
  auto* fixture_cmd = app.add_subcommand("fixture", "generate a synthetic logistic fixture");
  fixture_cmd->add_option("--dim", fx_dim);
  fixture_cmd->add_option("--samples", fx_samples);
  fixture_cmd->add_option("--seed", fx_seed);
  fixture_cmd->add_option("--mu", fx_mu);
  fixture_cmd->add_option("--noise", fx_noise);
  fixture_cmd->add_option("-o,--output", fx_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) {
      const RunConfig cfg = resolve_config(run_ref);
      const RunResult res = run(cfg, threads);
      const fs::path path = output_path(out_dir, cfg.output, cfg.name + ".csv");
      write_file(path, run_csv(res));
      std::cout << render_summary(res) << "wrote " << path.string() << '\n';
      return 0;
    }
    if (*sweep_cmd) {
      const RunConfig cfg = resolve_config(sweep_ref);
      const auto rows = grid_sweep(cfg, i_min, i_max, decays, threads);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      const fs::path path = output_path(out_dir, cfg.name + "-sweep.csv", cfg.name + "-sweep.csv");
      write_file(path, csv.str());
      std::cout << render_sweep(rows) << "wrote " << path.string() << '\n';
      return 0;
    }
    if (*verify_cmd) {
      if (!is_verify_selector(suite)) {
        std::cerr << "unknown suite '" << suite << "'; expected all";
        for (const auto& s : verify_suites()) std::cerr << ", " << s;
        std::cerr << '\n';
        return kExitUsage;
      }
      const auto rows = run_verify(suite, VerifyOptions{verify_seed, threads});
      std::cout << theory::render_report(rows);
      return all_passed(rows) ? 0 : kExitFailure;
    }
    if (*list_cmd) {
      for (const auto& p : presets()) {
        std::cout << p.name << "  " << p.summary << '\n';
        if (!write_dir.empty()) write_file(fs::path(write_dir) / (p.name + ".ini"), render_config(p.config));
      }
      return 0;
    }
    if (*fixture_cmd) {
      std::ostringstream os;
      write_logistic_fixture(os, make_logistic_fixture(fx_dim, fx_samples, fx_seed, fx_mu, fx_noise));
      write_file(fx_out, os.str());
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
