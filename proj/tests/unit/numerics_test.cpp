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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "madgrad/error.hpp"
#include "madgrad/numerics.hpp"

namespace madgrad {
namespace {

TEST(Axpy, Examples) {
  EXPECT_EQ(axpy(0.0, ParamVector{3}, ParamVector{7}), (ParamVector{7}));
  EXPECT_EQ(axpy(1.0, ParamVector{1, 2}, ParamVector{1, 2}), (ParamVector{2, 4}));
  EXPECT_EQ(axpy(-0.5, ParamVector{2, 4}, ParamVector{1, 1}), (ParamVector{0, -1}));
}

TEST(Axpy, LengthMismatchThrows) {
  EXPECT_THROW(axpy(1.0, ParamVector{1, 2}, ParamVector{1}), DimensionError);
}

TEST(HadamardScale, Examples) {
  // 0.2 / cbrt(0.4), high-precision reference.
  EXPECT_NEAR(hadamard_scale(ParamVector{0.2}, ParamVector{0.4}, 0.0)[0], 0.27144176165949066, 1e-15);
  EXPECT_EQ(hadamard_scale(ParamVector{0}, ParamVector{5}, 0.0)[0], 0.0);
  EXPECT_EQ(hadamard_scale(ParamVector{1}, ParamVector{8}, 0.0)[0], 0.5);
}

TEST(HadamardScale, EpsIsAddedAfterTheRoot) {
  EXPECT_DOUBLE_EQ(hadamard_scale(ParamVector{1}, ParamVector{8}, 0.5)[0], 1.0 / 2.5);
  EXPECT_DOUBLE_EQ(hadamard_scale(ParamVector{3}, ParamVector{0}, 0.5)[0], 6.0);
}

TEST(HadamardScale, Errors) {
  EXPECT_THROW(hadamard_scale(ParamVector{1}, ParamVector{0}, 0.0), DivisionByZeroError);
  EXPECT_THROW(hadamard_scale(ParamVector{1}, ParamVector{-1}, 0.0), DomainError);
  EXPECT_THROW(hadamard_scale(ParamVector{1}, ParamVector{1}, -1e-3), DomainError);
  EXPECT_THROW(hadamard_scale(ParamVector{1, 2}, ParamVector{1}, 0.0), DimensionError);
}

TEST(HadamardScale, MatchesPowerFormOnRandomInputs) {
  Rng rng(5);
  for (int i = 0; i < 10'000; ++i) {
    const double num = rng.uniform(-10, 10);
    const double den = std::exp(rng.uniform(-20, 20));
    const double got = hadamard_scale(ParamVector{num}, ParamVector{den}, 0.0)[0];
    const double want = num * std::pow(den, -1.0 / 3.0);
    EXPECT_LE(std::abs(got - want), 1e-12 * std::abs(want) + 1e-300);
  }
}

TEST(Norms, Examples) {
  const auto a = norms(ParamVector{3, 4});
  EXPECT_EQ(a.l2, 5.0);
  EXPECT_EQ(a.linf, 4.0);
  const auto b = norms(ParamVector(6));
  EXPECT_EQ(b.l2, 0.0);
  EXPECT_EQ(b.linf, 0.0);
  const auto c = norms(ParamVector{1, 1, 1, 1});
  EXPECT_EQ(c.l2, 2.0);
  EXPECT_EQ(c.linf, 1.0);
}

TEST(Norms, NoOverflowForLargeEntries) {
  const auto n = norms(ParamVector{3e200, 4e200});
  EXPECT_DOUBLE_EQ(n.l2, 5e200);
}

TEST(WeightedInvSqNorm, Examples) {
  EXPECT_EQ(weighted_inv_sq_norm(ParamVector{2}, ParamVector{4}), 1.0);
  EXPECT_EQ(weighted_inv_sq_norm(ParamVector{0, 0}, ParamVector{1, 9}), 0.0);
  EXPECT_EQ(weighted_inv_sq_norm(ParamVector{1, 2}, ParamVector{1, 2}), 3.0);
  EXPECT_THROW(weighted_inv_sq_norm(ParamVector{1}, ParamVector{0}), DomainError);
  EXPECT_THROW(weighted_inv_sq_norm(ParamVector{1}, ParamVector{-2}), DomainError);
}

TEST(Fuzz, FiniteInputsGiveFiniteOutputs) {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t d = 1 + rng.index(16);
    ParamVector x(d), y(d), pos(d);
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = rng.uniform(-1e3, 1e3);
      y[j] = rng.uniform(-1e3, 1e3);
      pos[j] = rng.uniform(1e-6, 1e3);
    }
    EXPECT_TRUE(axpy(rng.uniform(-5, 5), x, y).all_finite());
    EXPECT_TRUE(hadamard_scale(x, pos, 0.0).all_finite());
    EXPECT_TRUE(hadamard_scale(x, pos, 1e-6).all_finite());
    EXPECT_TRUE(std::isfinite(weighted_inv_sq_norm(x, pos)));
    const auto n = norms(x);
    EXPECT_GE(n.l2, n.linf);
    EXPECT_GE(n.linf, 0.0);
  }
}

TEST(GradSample, SparseValidation) {
  EXPECT_NO_THROW(GradSample::sparse(5, {{0, 1.0}, {3, 2.0}}));
  EXPECT_THROW(GradSample::sparse(5, {{3, 1.0}, {0, 2.0}}), DomainError);
  EXPECT_THROW(GradSample::sparse(5, {{1, 1.0}, {1, 2.0}}), DomainError);
  EXPECT_THROW(GradSample::sparse(5, {{5, 1.0}}), DimensionError);
}

TEST(GradSample, DensifyAndSparsifyRoundTrip) {
  const GradSample s = GradSample::sparse(6, {{1, 2.0}, {2, 0.0}, {4, -1.0}});
  EXPECT_EQ(s.nnz(), 3u);
  EXPECT_EQ(s.densify(), (ParamVector{0, 2, 0, 0, -1, 0}));
  const GradSample once = GradSample::sparsify(s.densify());
  EXPECT_EQ(once.nnz(), 2u);
  EXPECT_EQ(GradSample::sparsify(once.densify()), once);
  EXPECT_EQ(s.sparsified(), once);
  EXPECT_EQ(s.inf_norm(), 2.0);
}

TEST(GradSample, ForEachVisitsStoredEntriesInOrder) {
  const GradSample s = GradSample::sparse(10, {{2, 1.0}, {7, 3.0}});
  std::vector<std::size_t> seen;
  s.for_each([&](std::size_t i, double) { seen.push_back(i); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{2, 7}));
  const GradSample d(ParamVector{1, 2, 3});
  seen.clear();
  d.for_each([&](std::size_t i, double) { seen.push_back(i); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GradSample, NonFiniteDetected) {
  EXPECT_FALSE(GradSample(ParamVector{1, std::nan("")}).all_finite());
  EXPECT_FALSE(GradSample::sparse(3, {{1, std::numeric_limits<double>::infinity()}}).all_finite());
}

TEST(Rng, SameSeedSameMillionDraws) {
  Rng a(123456789), b(123456789);
  for (int i = 0; i < 1'000'000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, FrozenStream) {
  // SplitMix64 reference values for seed 0.
  Rng r(0);
  EXPECT_EQ(r.next_u64(), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(r.next_u64(), 0x6E789E6AA1B965F4ull);
  EXPECT_EQ(r.next_u64(), 0x06C45D188009454Full);
}

TEST(Rng, DistributionsInRange) {
  Rng r(9);
  double mean = 0.0, sq = 0.0;
  constexpr int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(r.index(7), 7u);
    const double z = r.normal();
    mean += z;
    sq += z * z;
  }
  mean /= n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, ForkIsDeterministicAndDistinct) {
  const Rng base(42);
  Rng f1 = base.fork(3), f2 = base.fork(3), g = base.fork(4);
  const auto a = f1.next_u64();
  EXPECT_EQ(a, f2.next_u64());
  EXPECT_NE(a, g.next_u64());
}

}  // namespace
}  // namespace madgrad
