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
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace madgrad {

/// Dense vector of model parameters (or any per-coordinate quantity).
/// The length is fixed at construction.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t dim, double fill = 0.0) : values_(dim, fill) {}
  ParamVector(std::initializer_list<double> values) : values_(values) {}
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  bool all_finite() const noexcept;

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> values_;
};

struct SparseEntry {
  std::size_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// One stochastic gradient observation, stored either densely or as sorted
/// (index, value) pairs.
class GradSample {
 public:
  GradSample() = default;
  /// Implicit so that a dense vector can be passed where a sample is expected.
  GradSample(ParamVector dense);  // NOLINT(google-explicit-constructor)

  /// Validates that indices are strictly increasing and below `dim`.
  static GradSample sparse(std::size_t dim, std::vector<SparseEntry> entries);

  /// Sparse sample holding the nonzero entries of `dense`.
  static GradSample sparsify(const ParamVector& dense);

  bool is_sparse() const noexcept { return std::holds_alternative<std::vector<SparseEntry>>(data_); }
  std::size_t dimension() const noexcept { return dim_; }
  /// Number of stored entries (the full dimension for dense samples).
  std::size_t nnz() const noexcept;

  ParamVector densify() const;
  /// Drops explicit zeros; the result is always sparse.
  GradSample sparsified() const;

  const ParamVector& dense_values() const;
  std::span<const SparseEntry> entries() const;

  /// Calls f(index, value) for every stored entry in increasing index order.
  template <class F>
  void for_each(F&& f) const {
    if (const auto* dense = std::get_if<ParamVector>(&data_)) {
      for (std::size_t i = 0; i < dense->size(); ++i) f(i, (*dense)[i]);
    } else {
      for (const auto& e : std::get<std::vector<SparseEntry>>(data_)) f(e.index, e.value);
    }
  }

  double inf_norm() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const GradSample&, const GradSample&) = default;

 private:
  std::size_t dim_ = 0;
  std::variant<ParamVector, std::vector<SparseEntry>> data_;
};

struct Norms {
  double l2;
  double linf;
};

/// Throws DimensionError unless both vectors have the same length.
void require_same_dim(std::size_t a, std::size_t b, const char* what);

/// a*x + y.
ParamVector axpy(double a, const ParamVector& x, const ParamVector& y);

/// Elementwise num / (cbrt(denom) + eps).
///
/// Throws DomainError for a negative denominator or eps, and
/// DivisionByZeroError when a coordinate has denom == 0 and eps == 0.
ParamVector hadamard_scale(const ParamVector& num, const ParamVector& denom, double eps);

/// Scalar kernel behind hadamard_scale; same error contract.
double cbrt_scale(double num, double denom, double eps);

Norms norms(std::span<const double> x) noexcept;
inline Norms norms(const ParamVector& x) noexcept { return norms(x.span()); }

double dot(const ParamVector& x, const ParamVector& y);

/// Sum of g_d^2 / a_d, the squared norm of g under diag(a)^{-1}.
double weighted_inv_sq_norm(const ParamVector& g, const ParamVector& a);

/// Counter-based pseudo random generator.
///
/// Draw n (1-based) is SplitMix64's finalizer applied to
/// seed + n * 0x9E3779B97F4A7C15, with the mixing constants
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB and shifts 30, 27, 31.
/// The stream depends only on (seed, n), so it is identical on every
/// platform and independent of thread scheduling. Derived distributions
/// (uniform, normal, index) are implemented here rather than through
/// <random> because the standard distributions are implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal by Box-Muller; consumes two draws.
  double normal() noexcept;
  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) noexcept;

  /// Independent generator for a sub-stream, derived from this seed only.
  Rng fork(std::uint64_t stream) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace madgrad
