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

#include "madgrad/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "madgrad/error.hpp"

namespace madgrad {

bool ParamVector::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GradSample::GradSample(ParamVector dense) : dim_(dense.size()), data_(std::move(dense)) {}

GradSample GradSample::sparse(std::size_t dim, std::vector<SparseEntry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index >= dim) {
      throw DimensionError("sparse gradient index " + std::to_string(entries[i].index) +
                           " out of range for dimension " + std::to_string(dim));
    }
    if (i > 0 && entries[i].index <= entries[i - 1].index) {
      throw DomainError("sparse gradient indices must be strictly increasing");
    }
  }
  GradSample out;
  out.dim_ = dim;
  out.data_ = std::move(entries);
  return out;
}

GradSample GradSample::sparsify(const ParamVector& dense) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) entries.push_back({i, dense[i]});
  }
  return sparse(dense.size(), std::move(entries));
}

std::size_t GradSample::nnz() const noexcept {
  if (const auto* dense = std::get_if<ParamVector>(&data_)) return dense->size();
  return std::get<std::vector<SparseEntry>>(data_).size();
}

ParamVector GradSample::densify() const {
  if (const auto* dense = std::get_if<ParamVector>(&data_)) return *dense;
  ParamVector out(dim_);
  for (const auto& e : std::get<std::vector<SparseEntry>>(data_)) out[e.index] = e.value;
  return out;
}

GradSample GradSample::sparsified() const {
  std::vector<SparseEntry> entries;
  for_each([&](std::size_t i, double v) {
    if (v != 0.0) entries.push_back({i, v});
  });
  return sparse(dim_, std::move(entries));
}

const ParamVector& GradSample::dense_values() const {
  if (const auto* dense = std::get_if<ParamVector>(&data_)) return *dense;
  throw DomainError("dense_values() called on a sparse gradient sample");
}

std::span<const SparseEntry> GradSample::entries() const {
  if (const auto* sparse = std::get_if<std::vector<SparseEntry>>(&data_)) return *sparse;
  throw DomainError("entries() called on a dense gradient sample");
}

double GradSample::inf_norm() const noexcept {
  double m = 0.0;
  for_each([&](std::size_t, double v) { m = std::max(m, std::abs(v)); });
  return m;
}

bool GradSample::all_finite() const noexcept {
  bool ok = true;
  for_each([&](std::size_t, double v) { ok = ok && std::isfinite(v); });
  return ok;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

ParamVector axpy(double a, const ParamVector& x, const ParamVector& y) {
  require_same_dim(x.size(), y.size(), "axpy");
  ParamVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
  return out;
}

double cbrt_scale(double num, double denom, double eps) {
  if (!(denom >= 0.0) || !(eps >= 0.0)) {
    throw DomainError("hadamard_scale: denominator and eps must be nonnegative");
  }
  if (denom == 0.0 && eps == 0.0) {
    throw DivisionByZeroError("hadamard_scale: zero denominator with eps = 0");
  }
  return num / (std::cbrt(denom) + eps);
}

ParamVector hadamard_scale(const ParamVector& num, const ParamVector& denom, double eps) {
  require_same_dim(num.size(), denom.size(), "hadamard_scale");
  ParamVector out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = cbrt_scale(num[i], denom[i], eps);
  return out;
}

Norms norms(std::span<const double> x) noexcept {
  // Scaled accumulation keeps the 2-norm finite for large finite entries.
  double linf = 0.0;
  for (double v : x) linf = std::max(linf, std::abs(v));
  if (linf == 0.0) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : x) {
    const double r = v / linf;
    sum += r * r;
  }
  return {linf * std::sqrt(sum), linf};
}

double dot(const ParamVector& x, const ParamVector& y) {
  require_same_dim(x.size(), y.size(), "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double weighted_inv_sq_norm(const ParamVector& g, const ParamVector& a) {
  require_same_dim(g.size(), a.size(), "weighted_inv_sq_norm");
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(a[i] > 0.0)) throw DomainError("weighted_inv_sq_norm: scaling must be positive");
    sum += g[i] * g[i] / a[i];
  }
  return sum;
}

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() noexcept {
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

double Rng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::index(std::size_t n) noexcept {
  // Lemire's multiply-shift with rejection, unbiased.
  const auto bound = static_cast<std::uint64_t>(n);
  auto product = static_cast<u128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

Rng Rng::fork(std::uint64_t stream) const noexcept {
  return Rng(mix64(seed_ ^ mix64(stream + kGolden)));
}

}  // namespace madgrad
