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

#include "madgrad/problems.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "madgrad/error.hpp"
#include "madgrad/text.hpp"

namespace madgrad {

namespace {

double softplus(double t) noexcept { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) noexcept {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double sign_or_zero(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Minimizes (1/n) sum softplus(-y_i <a_i, x>) + 1/2 sum_d w_d x_d^2 by damped
/// Newton. Every w_d must be positive.
struct LogisticRow {
  std::span<const SparseEntry> a;
  double y;
};

double sparse_dot(std::span<const SparseEntry> a, const Eigen::VectorXd& x) {
  double m = 0.0;
  for (const auto& e : a) m += e.value * x[static_cast<Eigen::Index>(e.index)];
  return m;
}

ParamVector solve_logistic(std::size_t dim, const std::vector<LogisticRow>& rows, const Eigen::VectorXd& w) {
  const auto n = static_cast<double>(rows.size());
  const auto objective = [&](const Eigen::VectorXd& x) {
    double f = 0.0;
    for (const auto& r : rows) f += softplus(-r.y * sparse_dot(r.a, x));
    return f / n + 0.5 * (w.array() * x.array().square()).sum();
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  double fx = objective(x);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd grad = (w.array() * x.array()).matrix();
    Eigen::MatrixXd hess = w.asDiagonal();
    for (const auto& r : rows) {
      const double m = r.y * sparse_dot(r.a, x);
      const double coef = -r.y * sigmoid(-m) / n;
      const double curv = sigmoid(m) * sigmoid(-m) / n;
      for (const auto& ei : r.a) {
        const auto i = static_cast<Eigen::Index>(ei.index);
        grad[i] += coef * ei.value;
        for (const auto& ej : r.a) hess(i, static_cast<Eigen::Index>(ej.index)) += curv * ei.value * ej.value;
      }
    }
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-14) break;
    const Eigen::VectorXd step = hess.ldlt().solve(grad);
    double t = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const Eigen::VectorXd trial = x - t * step;
      const double ft = objective(trial);
      if (ft <= fx - 1e-4 * t * grad.dot(step)) {
        x = trial;
        fx = ft;
        improved = true;
        break;
      }
    }
    if (!improved) {
      // Rounding floor: take the full step if it does not increase the objective.
      const Eigen::VectorXd trial = x - step;
      if (objective(trial) <= fx) x = trial;
      break;
    }
  }
  return ParamVector(std::vector<double>(x.data(), x.data() + x.size()));
}

std::vector<ParamVector> gaussian_points(std::size_t dim, std::size_t n, std::uint64_t seed, double center) {
  if (dim == 0 || n == 0) throw ConfigError("problem: dimension and sample count must be positive");
  Rng rng(seed);
  std::vector<ParamVector> pts(n, ParamVector(dim));
  for (auto& p : pts) {
    for (auto& v : p) v = center + rng.normal();
  }
  return pts;
}

void check_points(const std::vector<ParamVector>& pts) {
  if (pts.empty()) throw ConfigError("problem: empty sample set");
  for (const auto& p : pts) {
    require_same_dim(pts.front().size(), p.size(), "problem sample set");
    if (!p.all_finite()) throw DomainError("problem: non-finite sample");
  }
}

}  // namespace

// ----------------------------------------------------------------- Problem

double Problem::expected_loss(const ParamVector& x) const {
  double sum = 0.0;
  for (SampleId i = 0; i < num_samples(); ++i) sum += loss(x, i);
  return sum / static_cast<double>(num_samples());
}

void Problem::set_optimum(ParamVector x_star) {
  optimum_ = std::move(x_star);
  f_star_ = expected_loss(optimum_);
}

double suboptimality(const Problem& p, const ParamVector& x) {
  require_same_dim(p.dimension(), x.size(), "suboptimality");
  return p.expected_loss(x) - p.f_star();
}

FiniteDiffReport finite_diff_check(const Problem& p, const ParamVector& x, SampleId xi, double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) throw DomainError("finite_diff_check: h must lie in [1e-8, 1e-3]");
  require_same_dim(p.dimension(), x.size(), "finite_diff_check");
  const ParamVector g = p.grad(x, xi).densify();
  FiniteDiffReport rep;
  ParamVector probe = x;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (p.near_kink(x, xi, d, h)) {
      rep.skipped.push_back(d);
      continue;
    }
    probe[d] = x[d] + h;
    const double up = p.loss(probe, xi);
    probe[d] = x[d] - h;
    const double down = p.loss(probe, xi);
    probe[d] = x[d];
    const double fd = (up - down) / (2.0 * h);
    const double err = std::abs(fd - g[d]) / std::max({1.0, std::abs(fd), std::abs(g[d])});
    rep.max_rel_err = std::max(rep.max_rel_err, err);
    ++rep.checked;
  }
  return rep;
}

// ---------------------------------------------------------------- L1Median

L1Median::L1Median(std::vector<ParamVector> points) : dim_(0), points_(std::move(points)) {
  check_points(points_);
  dim_ = points_.front().size();
  ParamVector median(dim_);
  std::vector<double> column(points_.size());
  const std::size_t n = points_.size();
  for (std::size_t d = 0; d < dim_; ++d) {
    for (std::size_t i = 0; i < n; ++i) column[i] = points_[i][d];
    std::sort(column.begin(), column.end());
    median[d] = 0.5 * (column[(n - 1) / 2] + column[n / 2]);
  }
  set_optimum(std::move(median));
}

L1Median L1Median::generate(std::size_t dim, std::size_t num_points, std::uint64_t seed, double center) {
  return L1Median(gaussian_points(dim, num_points, seed, center));
}

double L1Median::loss(const ParamVector& x, SampleId xi) const {
  const auto& p = points_.at(xi);
  double sum = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) sum += std::abs(x[d] - p[d]);
  return sum;
}

GradSample L1Median::grad(const ParamVector& x, SampleId xi) const {
  const auto& p = points_.at(xi);
  ParamVector g(dim_);
  for (std::size_t d = 0; d < dim_; ++d) g[d] = sign_or_zero(x[d] - p[d]);
  return g;
}

bool L1Median::near_kink(const ParamVector& x, SampleId xi, std::size_t d, double h) const {
  return std::abs(x[d] - points_.at(xi)[d]) <= h;
}

// ------------------------------------------------------ StochasticQuadratic

StochasticQuadratic::StochasticQuadratic(std::vector<ParamVector> points) : dim_(0), points_(std::move(points)) {
  check_points(points_);
  dim_ = points_.front().size();
  ParamVector mean(dim_);
  for (const auto& p : points_) {
    for (std::size_t d = 0; d < dim_; ++d) mean[d] += p[d];
  }
  for (auto& v : mean) v /= static_cast<double>(points_.size());
  set_optimum(std::move(mean));
}

StochasticQuadratic StochasticQuadratic::generate(std::size_t dim, std::size_t num_points, std::uint64_t seed,
                                                  double center) {
  return StochasticQuadratic(gaussian_points(dim, num_points, seed, center));
}

double StochasticQuadratic::loss(const ParamVector& x, SampleId xi) const {
  const auto& p = points_.at(xi);
  double sum = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) sum += (x[d] - p[d]) * (x[d] - p[d]);
  return 0.5 * sum;
}

GradSample StochasticQuadratic::grad(const ParamVector& x, SampleId xi) const {
  const auto& p = points_.at(xi);
  ParamVector g(dim_);
  for (std::size_t d = 0; d < dim_; ++d) g[d] = x[d] - p[d];
  return g;
}

// -------------------------------------------------------- SyntheticLogistic

namespace {

ParamVector solve_dense_logistic(const LogisticFixture& fx) {
  std::vector<std::vector<SparseEntry>> rows_storage(fx.num_samples);
  std::vector<LogisticRow> rows;
  rows.reserve(fx.num_samples);
  for (std::size_t i = 0; i < fx.num_samples; ++i) {
    auto& r = rows_storage[i];
    r.reserve(fx.dim);
    for (std::size_t d = 0; d < fx.dim; ++d) r.push_back({d, fx.features[i * fx.dim + d]});
    rows.push_back({r, fx.labels[i]});
  }
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(fx.dim), fx.mu);
  return solve_logistic(fx.dim, rows, w);
}

void validate_fixture(const LogisticFixture& fx) {
  if (fx.dim == 0 || fx.num_samples == 0) throw ConfigError("logistic fixture: D and n must be positive");
  if (!(fx.mu > 0.0)) throw ConfigError("logistic fixture: mu must be > 0");
  if (fx.features.size() != fx.dim * fx.num_samples) throw ConfigError("logistic fixture: feature table size");
  if (fx.labels.size() != fx.num_samples) throw ConfigError("logistic fixture: label count");
  if (fx.x_ref.size() != fx.dim) throw ConfigError("logistic fixture: x_ref length");
  for (double y : fx.labels) {
    if (y != 1.0 && y != -1.0) throw ConfigError("logistic fixture: labels must be +1 or -1");
  }
}

}  // namespace

LogisticFixture make_logistic_fixture(std::size_t dim, std::size_t num_samples, std::uint64_t seed, double mu,
                                      double label_noise) {
  if (dim == 0 || num_samples == 0) throw ConfigError("logistic fixture: D and n must be positive");
  LogisticFixture fx;
  fx.dim = dim;
  fx.num_samples = num_samples;
  fx.seed = seed;
  fx.mu = mu;
  fx.label_noise = label_noise;
  Rng rng(seed);
  ParamVector planted(dim);
  for (auto& v : planted) v = rng.normal();
  fx.features.resize(dim * num_samples);
  fx.labels.resize(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) {
    double margin = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double a = rng.normal();
      fx.features[i * dim + d] = a;
      margin += a * planted[d];
    }
    double y = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform() < label_noise) y = -y;
    fx.labels[i] = y;
  }
  fx.x_ref = solve_dense_logistic(fx);
  return fx;
}

void write_logistic_fixture(std::ostream& os, const LogisticFixture& fx) {
  os << "# synthetic-logistic fixture\n";
  os << "D " << fx.dim << '\n';
  os << "n " << fx.num_samples << '\n';
  os << "seed " << fx.seed << '\n';
  os << "mu " << text::to_decimal(fx.mu) << '\n';
  os << "label_noise " << text::to_decimal(fx.label_noise) << '\n';
  os << "x_ref";
  for (double v : fx.x_ref) os << ' ' << text::to_decimal(v);
  os << "\ndata\n";
  for (std::size_t i = 0; i < fx.num_samples; ++i) {
    os << (fx.labels[i] > 0 ? "1" : "-1");
    for (std::size_t d = 0; d < fx.dim; ++d) os << ' ' << text::to_decimal(fx.features[i * fx.dim + d]);
    os << '\n';
  }
}

LogisticFixture read_logistic_fixture(std::istream& is) {
  LogisticFixture fx;
  std::string line;
  bool in_data = false;
  bool have_dim = false;
  bool have_n = false;
  while (std::getline(is, line)) {
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream ls{std::string(body)};
    if (in_data) {
      std::string tok;
      ls >> tok;
      fx.labels.push_back(text::parse_decimal(tok));
      std::size_t count = 0;
      while (ls >> tok) {
        fx.features.push_back(text::parse_decimal(tok));
        ++count;
      }
      if (count != fx.dim) throw ConfigError("logistic fixture: data row with wrong column count");
      continue;
    }
    std::string key;
    ls >> key;
    if (key == "D") {
      ls >> fx.dim;
      have_dim = true;
    } else if (key == "n") {
      ls >> fx.num_samples;
      have_n = true;
    } else if (key == "seed") {
      ls >> fx.seed;
    } else if (key == "mu" || key == "label_noise" || key == "x_ref") {
      std::string tok;
      std::vector<double> vals;
      while (ls >> tok) vals.push_back(text::parse_decimal(tok));
      if (key == "x_ref") {
        fx.x_ref = ParamVector(std::move(vals));
      } else if (vals.size() == 1) {
        (key == "mu" ? fx.mu : fx.label_noise) = vals.front();
      } else {
        throw ConfigError("logistic fixture: '" + key + "' takes one value");
      }
    } else if (key == "data") {
      if (!have_dim || !have_n) throw ConfigError("logistic fixture: header must name D and n before data");
      in_data = true;
    } else {
      throw ConfigError("logistic fixture: unknown header key '" + key + "'");
    }
    if (ls.fail() && !ls.eof()) throw ConfigError("logistic fixture: malformed header line '" + line + "'");
  }
  validate_fixture(fx);
  return fx;
}

SyntheticLogistic::SyntheticLogistic(LogisticFixture fixture) : fx_(std::move(fixture)) {
  validate_fixture(fx_);
  set_optimum(fx_.x_ref);
}

double SyntheticLogistic::loss(const ParamVector& x, SampleId xi) const {
  const double* a = &fx_.features.at(xi * fx_.dim);
  double m = 0.0;
  double sq = 0.0;
  for (std::size_t d = 0; d < fx_.dim; ++d) {
    m += a[d] * x[d];
    sq += x[d] * x[d];
  }
  return softplus(-fx_.labels[xi] * m) + 0.5 * fx_.mu * sq;
}

GradSample SyntheticLogistic::grad(const ParamVector& x, SampleId xi) const {
  const double* a = &fx_.features.at(xi * fx_.dim);
  const double y = fx_.labels[xi];
  double m = 0.0;
  for (std::size_t d = 0; d < fx_.dim; ++d) m += a[d] * x[d];
  const double coef = -y * sigmoid(-y * m);
  ParamVector g(fx_.dim);
  for (std::size_t d = 0; d < fx_.dim; ++d) g[d] = coef * a[d] + fx_.mu * x[d];
  return g;
}

// --------------------------------------------------------------- AdamStress

AdamStress::AdamStress(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ConfigError("adam_stress: dimension must be positive");
  set_optimum(ParamVector(dim, -1.0));
}

double AdamStress::loss(const ParamVector& x, SampleId xi) const {
  const double a = slope(xi);
  double sum = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) sum += a * x[d] + kPenalty * std::max(0.0, std::abs(x[d]) - 1.0);
  return sum;
}

GradSample AdamStress::grad(const ParamVector& x, SampleId xi) const {
  const double a = slope(xi);
  ParamVector g(dim_);
  for (std::size_t d = 0; d < dim_; ++d) g[d] = a + (std::abs(x[d]) > 1.0 ? kPenalty * sign_or_zero(x[d]) : 0.0);
  return g;
}

bool AdamStress::near_kink(const ParamVector& x, SampleId /*xi*/, std::size_t d, double h) const {
  return std::abs(std::abs(x[d]) - 1.0) <= h;
}

// --------------------------------------------------------- SparseBagOfWords

SparseBagOfWords::SparseBagOfWords(std::size_t vocab, std::vector<Document> docs, double mu)
    : vocab_(vocab), docs_(std::move(docs)), mu_(mu) {
  if (vocab_ == 0 || docs_.empty()) throw ConfigError("sparse_bow: vocabulary and corpus must be non-empty");
  if (!(mu_ > 0.0)) throw ConfigError("sparse_bow: mu must be > 0");
  std::vector<std::size_t> counts(vocab_, 0);
  std::vector<LogisticRow> rows;
  rows.reserve(docs_.size());
  for (auto& doc : docs_) {
    // Re-validate through GradSample's sorted/unique/in-range check.
    (void)GradSample::sparse(vocab_, doc.features);
    if (doc.label != 1.0 && doc.label != -1.0) throw ConfigError("sparse_bow: labels must be +1 or -1");
    for (const auto& e : doc.features) ++counts[e.index];
    rows.push_back({doc.features, doc.label});
  }
  Eigen::VectorXd w(static_cast<Eigen::Index>(vocab_));
  for (std::size_t d = 0; d < vocab_; ++d) {
    if (counts[d] == 0) throw ConfigError("sparse_bow: feature " + std::to_string(d) + " never occurs");
    w[static_cast<Eigen::Index>(d)] = mu_ * static_cast<double>(counts[d]) / static_cast<double>(docs_.size());
  }
  set_optimum(solve_logistic(vocab_, rows, w));
}

SparseBagOfWords SparseBagOfWords::generate(std::size_t vocab, std::size_t num_docs, std::size_t features_per_doc,
                                            std::uint64_t seed, double mu) {
  if (num_docs < vocab) throw ConfigError("sparse_bow: need at least one document per vocabulary entry");
  if (features_per_doc == 0 || features_per_doc > vocab) {
    throw ConfigError("sparse_bow: features per document must lie in [1, vocab]");
  }
  Rng rng(seed);
  ParamVector planted(vocab);
  for (auto& v : planted) v = rng.normal();
  std::vector<Document> docs(num_docs);
  std::vector<char> used(vocab, 0);
  for (std::size_t i = 0; i < num_docs; ++i) {
    std::vector<std::size_t> idx{i % vocab};
    used.assign(vocab, 0);
    used[i % vocab] = 1;
    while (idx.size() < features_per_doc) {
      const std::size_t j = rng.index(vocab);
      if (!used[j]) {
        used[j] = 1;
        idx.push_back(j);
      }
    }
    std::sort(idx.begin(), idx.end());
    double margin = 0.0;
    for (std::size_t j : idx) {
      const double weight = rng.uniform(0.5, 1.5);
      docs[i].features.push_back({j, weight});
      margin += weight * planted[j];
    }
    docs[i].label = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform() < 0.1) docs[i].label = -docs[i].label;
  }
  return SparseBagOfWords(vocab, std::move(docs), mu);
}

double SparseBagOfWords::loss(const ParamVector& x, SampleId xi) const {
  const auto& doc = docs_.at(xi);
  double m = 0.0;
  double sq = 0.0;
  for (const auto& e : doc.features) {
    m += e.value * x[e.index];
    sq += x[e.index] * x[e.index];
  }
  return softplus(-doc.label * m) + 0.5 * mu_ * sq;
}

GradSample SparseBagOfWords::grad(const ParamVector& x, SampleId xi) const {
  const auto& doc = docs_.at(xi);
  double m = 0.0;
  for (const auto& e : doc.features) m += e.value * x[e.index];
  const double coef = -doc.label * sigmoid(-doc.label * m);
  std::vector<SparseEntry> entries;
  entries.reserve(doc.features.size());
  for (const auto& e : doc.features) entries.push_back({e.index, coef * e.value + mu_ * x[e.index]});
  return GradSample::sparse(vocab_, std::move(entries));
}

}  // namespace madgrad
