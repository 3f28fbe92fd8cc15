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

#include "madgrad/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "madgrad/error.hpp"
#include "madgrad/text.hpp"

namespace madgrad::bench {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment", {"name", "steps", "seeds", "record_every", "output"}},
      {"problem",
       {"id", "dim", "samples", "seed", "center", "mu", "label_noise", "features_per_doc", "fixture", "init"}},
      {"optimizer", {"id", "eps", "weight_decay", "g_bound", "beta1", "beta2", "beta_scale", "beta_power"}},
      {"schedule", {"kind", "lr", "boundaries", "steps_per_epoch", "factor", "offset", "warmup", "end", "power"}},
      {"momentum", {"kind", "c", "r", "j"}},
  };
  return keys;
}

std::uint64_t parse_count(const std::string& where, std::string_view token) {
  token = text::trim(token);
  if (token.empty() || token.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ConfigError(where + ": expected a non-negative integer, got '" + std::string(token) + "'");
  }
  try {
    return std::stoull(std::string(token));
  } catch (const std::out_of_range&) {
    throw ConfigError(where + ": integer out of range");
  }
}

double parse_real(const std::string& where, std::string_view token) {
  try {
    return text::parse_decimal(token);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (auto child = root.get_child_optional(name_)) tree_ = *child;
  }

  std::optional<std::string> raw(const std::string& key) const {
    if (auto v = tree_.get_optional<std::string>(key)) return std::string(text::trim(*v));
    return std::nullopt;
  }

  void str(const std::string& key, std::string& out) const {
    if (auto v = raw(key)) out = *v;
  }
  template <typename Int>
  void count(const std::string& key, Int& out) const {
    if (auto v = raw(key)) out = static_cast<Int>(parse_count(where(key), *v));
  }
  void real(const std::string& key, double& out) const {
    if (auto v = raw(key)) out = parse_real(where(key), *v);
  }
  void real(const std::string& key, std::optional<double>& out) const {
    if (auto v = raw(key); v && !v->empty()) out = parse_real(where(key), *v);
  }

  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

 private:
  std::string name_;
  pt::ptree tree_;
};

void reject_unknown(const pt::ptree& root) {
  const auto& keys = allowed_keys();
  for (const auto& [section, tree] : root) {
    const auto it = keys.find(section);
    if (it == keys.end()) {
      if (tree.empty()) throw ConfigError("config: key '" + section + "' outside any section");
      throw ConfigError("config: unknown section [" + section + "]");
    }
    for (const auto& [key, value] : tree) {
      if (!it->second.contains(key)) throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
    }
  }
}

std::string join_steps(const std::vector<Step>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string render_seeds(const std::vector<std::uint64_t>& seeds) {
  // Contiguous ascending runs of three or more collapse to a range.
  std::string out;
  std::size_t i = 0;
  while (i < seeds.size()) {
    std::size_t j = i;
    while (j + 1 < seeds.size() && seeds[j + 1] == seeds[j] + 1) ++j;
    if (!out.empty()) out += ',';
    if (j - i >= 2) {
      out += std::to_string(seeds[i]) + ".." + std::to_string(seeds[j]);
      i = j + 1;
    } else {
      out += std::to_string(seeds[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& optimizer_ids() {
  static const std::vector<std::string> ids{"madgrad",
                                            "madgrad_theory",
                                            "sgd",
                                            "sgdm",
                                            "inline_avg",
                                            "adam",
                                            "amsgrad",
                                            "adagrad_md",
                                            "adagrad_da",
                                            "dual_avg",
                                            "da_mom",
                                            "variant_unweighted",
                                            "variant_weighted_denominator",
                                            "variant_weighted_numerator",
                                            "variant_cube_root"};
  return ids;
}

bool is_known_optimizer(const std::string& id) {
  const auto& ids = optimizer_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& piece : text::split(text, ',')) {
    const auto dots = piece.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_count("seeds", piece));
      continue;
    }
    const auto lo = parse_count("seeds", std::string_view(piece).substr(0, dots));
    const auto hi = parse_count("seeds", std::string_view(piece).substr(dots + 2));
    if (hi < lo) throw ConfigError("seeds: empty range '" + piece + "'");
    if (hi - lo > 1'000'000) throw ConfigError("seeds: range too large");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

RunConfig parse_config(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  reject_unknown(root);

  RunConfig cfg;
  const Section ex(root, "experiment");
  ex.str("name", cfg.name);
  ex.count("steps", cfg.steps);
  if (auto seeds = ex.raw("seeds")) cfg.seeds = parse_seed_list(*seeds);
  ex.count("record_every", cfg.record_every);
  ex.str("output", cfg.output);

  const Section pr(root, "problem");
  auto& p = cfg.problem;
  pr.str("id", p.id);
  pr.count("dim", p.dim);
  pr.count("samples", p.samples);
  pr.count("seed", p.seed);
  pr.real("center", p.center);
  pr.real("mu", p.mu);
  pr.real("label_noise", p.label_noise);
  pr.count("features_per_doc", p.features_per_doc);
  pr.str("fixture", p.fixture);
  pr.real("init", p.init);

  const Section op(root, "optimizer");
  auto& o = cfg.optimizer;
  op.str("id", o.id);
  op.real("eps", o.eps);
  op.real("weight_decay", o.weight_decay);
  op.real("g_bound", o.g_bound);
  op.real("beta1", o.beta1);
  op.real("beta2", o.beta2);
  op.real("beta_scale", o.beta_scale);
  op.real("beta_power", o.beta_power);

  const Section sc(root, "schedule");
  auto& s = cfg.schedule;
  sc.str("kind", s.kind);
  sc.real("lr", s.lr);
  if (auto b = sc.raw("boundaries")) {
    s.boundaries.clear();
    for (const auto& piece : text::split(*b, ',')) s.boundaries.push_back(parse_count(sc.where("boundaries"), piece));
  }
  sc.count("steps_per_epoch", s.steps_per_epoch);
  sc.real("factor", s.factor);
  sc.real("offset", s.offset);
  sc.count("warmup", s.warmup);
  sc.count("end", s.end);
  sc.real("power", s.power);

  const Section mo(root, "momentum");
  auto& m = cfg.momentum;
  mo.str("kind", m.kind);
  mo.real("c", m.c);
  mo.real("r", m.r);
  mo.real("j", m.j);

  validate(cfg);
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  RunConfig cfg = parse_config(in);
  if (!cfg.problem.fixture.empty()) {
    const std::filesystem::path fixture(cfg.problem.fixture);
    if (fixture.is_relative()) cfg.problem.fixture = (path.parent_path() / fixture).lexically_normal().string();
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream os;
  const auto num = [](double v) { return text::to_decimal(v); };
  os << "[experiment]\n"
     << "name = " << cfg.name << '\n'
     << "steps = " << cfg.steps << '\n'
     << "seeds = " << render_seeds(cfg.seeds) << '\n'
     << "record_every = " << cfg.record_every << '\n'
     << "output = " << cfg.output << "\n\n";
  const auto& p = cfg.problem;
  os << "[problem]\n"
     << "id = " << p.id << '\n'
     << "dim = " << p.dim << '\n'
     << "samples = " << p.samples << '\n'
     << "seed = " << p.seed << '\n'
     << "center = " << num(p.center) << '\n'
     << "mu = " << num(p.mu) << '\n'
     << "label_noise = " << num(p.label_noise) << '\n'
     << "features_per_doc = " << p.features_per_doc << '\n'
     << "fixture = " << p.fixture << '\n'
     << "init = " << num(p.init) << "\n\n";
  const auto& o = cfg.optimizer;
  os << "[optimizer]\n"
     << "id = " << o.id << '\n'
     << "eps = " << (o.eps ? num(*o.eps) : "") << '\n'
     << "weight_decay = " << num(o.weight_decay) << '\n'
     << "g_bound = " << (o.g_bound ? num(*o.g_bound) : "") << '\n'
     << "beta1 = " << num(o.beta1) << '\n'
     << "beta2 = " << num(o.beta2) << '\n'
     << "beta_scale = " << num(o.beta_scale) << '\n'
     << "beta_power = " << num(o.beta_power) << "\n\n";
  const auto& s = cfg.schedule;
  os << "[schedule]\n"
     << "kind = " << s.kind << '\n'
     << "lr = " << num(s.lr) << '\n'
     << "boundaries = " << join_steps(s.boundaries) << '\n'
     << "steps_per_epoch = " << s.steps_per_epoch << '\n'
     << "factor = " << num(s.factor) << '\n'
     << "offset = " << num(s.offset) << '\n'
     << "warmup = " << s.warmup << '\n'
     << "end = " << s.end << '\n'
     << "power = " << num(s.power) << "\n\n";
  const auto& m = cfg.momentum;
  os << "[momentum]\n"
     << "kind = " << m.kind << '\n'
     << "c = " << num(m.c) << '\n'
     << "r = " << num(m.r) << '\n'
     << "j = " << num(m.j) << '\n';
  return os.str();
}

void validate(const RunConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("experiment: seeds must not be empty");
  if (cfg.steps < 1) throw ConfigError("experiment: steps must be >= 1");
  if (cfg.record_every < 1) throw ConfigError("experiment: record_every must be >= 1");
  {
    auto sorted = cfg.seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("experiment: duplicate seed");
    }
  }
  static const std::set<std::string> problems{"l1median", "quadratic", "logistic", "sparse_bow", "adam_stress"};
  if (!problems.contains(cfg.problem.id)) throw ConfigError("problem: unknown id '" + cfg.problem.id + "'");
  if (cfg.problem.dim < 1) throw ConfigError("problem: dim must be >= 1");
  if (cfg.problem.samples < 1) throw ConfigError("problem: samples must be >= 1");
  if (!is_known_optimizer(cfg.optimizer.id)) throw ConfigError("optimizer: unknown id '" + cfg.optimizer.id + "'");
  if (!(cfg.optimizer.weight_decay >= 0.0)) throw ConfigError("optimizer: weight_decay must be >= 0");
  if (cfg.optimizer.eps && !(*cfg.optimizer.eps >= 0.0)) throw ConfigError("optimizer: eps must be >= 0");
  if (cfg.optimizer.g_bound && !(*cfg.optimizer.g_bound > 0.0)) throw ConfigError("optimizer: g_bound must be > 0");

  // Schedules validate their own parameters on construction.
  (void)make_schedule(cfg.schedule, 1.0);
  (void)make_momentum(cfg.momentum);
}

StepSizeSchedule make_schedule(const ScheduleSpec& s, std::optional<double> theorem1_gamma) {
  if (s.kind == "constant") return StepSizeSchedule(sched::Constant{s.lr});
  if (s.kind == "stagewise") {
    if (s.steps_per_epoch < 1) throw ConfigError("schedule: steps_per_epoch must be >= 1");
    std::vector<Step> steps;
    for (Step b : s.boundaries) steps.push_back(b * s.steps_per_epoch);
    return StepSizeSchedule(sched::Stagewise{s.lr, std::move(steps), s.factor});
  }
  if (s.kind == "sqrt") return StepSizeSchedule(sched::SqrtDecay{s.lr, s.offset});
  if (s.kind == "warmup") return StepSizeSchedule(sched::InverseSqrtWarmup{s.lr, s.warmup});
  if (s.kind == "poly") return StepSizeSchedule(sched::PolynomialDecay{s.lr, s.end, s.power});
  if (s.kind == "theorem1") {
    if (!theorem1_gamma) throw ConfigError("schedule: theorem1 step size depends on the problem");
    return StepSizeSchedule(sched::Constant{*theorem1_gamma});
  }
  throw ConfigError("schedule: unknown kind '" + s.kind + "'");
}

MomentumSchedule make_momentum(const MomentumSpec& m) {
  if (m.kind == "constant") return MomentumSchedule(sched::ConstantC{m.c});
  if (m.kind == "decaying") return MomentumSchedule(sched::DecayingC{m.r, m.j});
  throw ConfigError("momentum: unknown kind '" + m.kind + "'");
}

ScheduleSpec with_learning_rate(ScheduleSpec s, double lr) {
  s.lr = lr;
  return s;
}

}  // namespace madgrad::bench
