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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "madgrad/numerics.hpp"

namespace madgrad {

/// Index of a sample xi in a problem's finite sample set.
using SampleId = std::size_t;

/// Convex stochastic objective f(x) = E_xi[f(x, xi)] over a finite, uniformly
/// sampled set of xi, with a known minimizer. Instances are immutable.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::size_t num_samples() const = 0;

  SampleId sample(Rng& rng) const { return rng.index(num_samples()); }

  virtual double loss(const ParamVector& x, SampleId xi) const = 0;
  virtual GradSample grad(const ParamVector& x, SampleId xi) const = 0;

  /// Exact expectation by enumerating the sample set.
  virtual double expected_loss(const ParamVector& x) const;

  const ParamVector& optimum() const noexcept { return optimum_; }
  double f_star() const noexcept { return f_star_; }

  /// Uniform bound G with ||grad f(x, xi)||_inf <= G for all x, xi, if any.
  virtual std::optional<double> g_inf_bound() const { return std::nullopt; }

  /// True when f(., xi) is not differentiable within h of x along coordinate d.
  virtual bool near_kink(const ParamVector& /*x*/, SampleId /*xi*/, std::size_t /*d*/, double /*h*/) const {
    return false;
  }

  virtual bool sparse_gradients() const { return false; }

 protected:
  /// Called by subclasses once the data is in place.
  void set_optimum(ParamVector x_star);

 private:
  ParamVector optimum_;
  double f_star_ = 0.0;
};

/// F(x) - f_star.
double suboptimality(const Problem& p, const ParamVector& x);

struct FiniteDiffReport {
  double max_rel_err = 0.0;
  std::size_t checked = 0;
  /// Coordinates skipped because x sits at (or within h of) a kink.
  std::vector<std::size_t> skipped;
};

/// Central differences of loss(., xi) against grad(., xi). The error per
/// coordinate is |fd - g| / max(1, |fd|, |g|). Requires h in [1e-8, 1e-3].
FiniteDiffReport finite_diff_check(const Problem& p, const ParamVector& x, SampleId xi, double h);

/// f(x, xi) = ||x - xi||_1. Minimizer: coordinate-wise median. G = 1.
/// The subgradient at a kink (x_d == xi_d) is 0 in that coordinate.
class L1Median final : public Problem {
 public:
  explicit L1Median(std::vector<ParamVector> points);
  /// `num_points` points with i.i.d. N(center, 1) coordinates.
  static L1Median generate(std::size_t dim, std::size_t num_points, std::uint64_t seed, double center = 1.0);

  std::string name() const override { return "l1median"; }
  std::size_t dimension() const override { return dim_; }
  std::size_t num_samples() const override { return points_.size(); }
  double loss(const ParamVector& x, SampleId xi) const override;
  GradSample grad(const ParamVector& x, SampleId xi) const override;
  std::optional<double> g_inf_bound() const override { return 1.0; }
  bool near_kink(const ParamVector& x, SampleId xi, std::size_t d, double h) const override;

  const std::vector<ParamVector>& points() const noexcept { return points_; }

 private:
  std::size_t dim_;
  std::vector<ParamVector> points_;
};

/// f(x, xi) = 0.5 ||x - xi||^2. Minimizer: the mean point. No global G.
class StochasticQuadratic final : public Problem {
 public:
  explicit StochasticQuadratic(std::vector<ParamVector> points);
  static StochasticQuadratic generate(std::size_t dim, std::size_t num_points, std::uint64_t seed,
                                      double center = 1.0);

  std::string name() const override { return "quadratic"; }
  std::size_t dimension() const override { return dim_; }
  std::size_t num_samples() const override { return points_.size(); }
  double loss(const ParamVector& x, SampleId xi) const override;
  GradSample grad(const ParamVector& x, SampleId xi) const override;

 private:
  std::size_t dim_;
  std::vector<ParamVector> points_;
};

/// Data behind SyntheticLogistic: Gaussian features, labels from a planted
/// separator with flipped-label noise, ridge weight mu, and the reference
/// minimizer computed by damped Newton.
struct LogisticFixture {
  std::size_t dim = 0;
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;
  double mu = 0.0;
  double label_noise = 0.0;
  std::vector<double> features;  // row-major, num_samples x dim
  std::vector<double> labels;    // +1 / -1
  ParamVector x_ref;
};

LogisticFixture make_logistic_fixture(std::size_t dim, std::size_t num_samples, std::uint64_t seed,
                                      double mu = 1e-2, double label_noise = 0.1);

/// Plain-text fixture format:
///
///   # synthetic-logistic fixture
///   D <dim>
///   n <num_samples>
///   seed <seed>
///   mu <mu>
///   label_noise <p>
///   x_ref <dim decimals>
///   data
///   <label> <dim features>      (n rows)
void write_logistic_fixture(std::ostream& os, const LogisticFixture& fx);
LogisticFixture read_logistic_fixture(std::istream& is);

/// f(x, xi) = log(1 + exp(-y <a, x>)) + mu/2 ||x||^2.
class SyntheticLogistic final : public Problem {
 public:
  explicit SyntheticLogistic(LogisticFixture fixture);

  std::string name() const override { return "logistic"; }
  std::size_t dimension() const override { return fx_.dim; }
  std::size_t num_samples() const override { return fx_.num_samples; }
  double loss(const ParamVector& x, SampleId xi) const override;
  GradSample grad(const ParamVector& x, SampleId xi) const override;

  const LogisticFixture& fixture() const noexcept { return fx_; }

 private:
  LogisticFixture fx_;
};

/// Alternating linear losses a_xi * x_d on every coordinate plus an exact
/// penalty M * max(0, |x_d| - 1) confining the optimum to the box [-1, 1].
/// One sample in eleven has slope 11 and the rest slope -1, so the mean
/// slope is 1/11 > 0 and x* = -1. The rare large gradient is the regime in
/// which exponential-moving-average methods misjudge the mean direction.
class AdamStress final : public Problem {
 public:
  explicit AdamStress(std::size_t dim);

  std::string name() const override { return "adam_stress"; }
  std::size_t dimension() const override { return dim_; }
  std::size_t num_samples() const override { return 11; }
  double loss(const ParamVector& x, SampleId xi) const override;
  GradSample grad(const ParamVector& x, SampleId xi) const override;
  std::optional<double> g_inf_bound() const override { return kBigSlope + kPenalty; }
  bool near_kink(const ParamVector& x, SampleId xi, std::size_t d, double h) const override;

  static constexpr double kBigSlope = 11.0;
  static constexpr double kPenalty = 22.0;

 private:
  double slope(SampleId xi) const noexcept { return xi == 0 ? kBigSlope : -1.0; }
  std::size_t dim_;
};

/// Sparse documents over a vocabulary of size D. Each document lists
/// distinct feature indices with positive weights; the loss is logistic plus
/// mu/2 * x_d^2 on the document's own features, so every gradient has exactly
/// one entry per document feature.
class SparseBagOfWords final : public Problem {
 public:
  struct Document {
    std::vector<SparseEntry> features;  // sorted by index
    double label;
  };

  SparseBagOfWords(std::size_t vocab, std::vector<Document> docs, double mu);
  static SparseBagOfWords generate(std::size_t vocab, std::size_t num_docs, std::size_t features_per_doc,
                                   std::uint64_t seed, double mu = 1e-2);

  std::string name() const override { return "sparse_bow"; }
  std::size_t dimension() const override { return vocab_; }
  std::size_t num_samples() const override { return docs_.size(); }
  double loss(const ParamVector& x, SampleId xi) const override;
  GradSample grad(const ParamVector& x, SampleId xi) const override;
  bool sparse_gradients() const override { return true; }

  const Document& document(SampleId xi) const { return docs_.at(xi); }

 private:
  std::size_t vocab_;
  std::vector<Document> docs_;
  double mu_;
};

}  // namespace madgrad
