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

#include <gtest/gtest.h>

#include "madgrad/error.hpp"
#include "madgrad/schedules.hpp"

namespace madgrad {
namespace {

TEST(StepSize, SqrtDecay) {
  const StepSizeSchedule s(sched::SqrtDecay{1.0, 0.0});
  EXPECT_EQ(s.at(3), 0.5);
  EXPECT_EQ(s.at(0), 1.0);
  const StepSizeSchedule shifted(sched::SqrtDecay{2.0, 5.0});
  EXPECT_DOUBLE_EQ(shifted.at(3), 2.0 / 3.0);
}

TEST(StepSize, StagewiseTenthing) {
  const StepSizeSchedule s(sched::Stagewise{0.1, {150, 225}, 0.1});
  EXPECT_EQ(s.at(0), 0.1);
  EXPECT_EQ(s.at(149), 0.1);
  EXPECT_DOUBLE_EQ(s.at(150), 0.01);
  EXPECT_DOUBLE_EQ(s.at(200), 0.01);
  EXPECT_DOUBLE_EQ(s.at(225), 0.001);
  EXPECT_DOUBLE_EQ(s.at(1'000'000), 0.001);
}

TEST(StepSize, ConstantTableValue) {
  const StepSizeSchedule s(sched::Constant{2.5e-4});
  for (Step k : {0ull, 1ull, 77ull, 1'000'000ull}) EXPECT_EQ(s.at(k), 2.5e-4);
}

TEST(StepSize, InverseSqrtWarmup) {
  const StepSizeSchedule s(sched::InverseSqrtWarmup{1.0, 4});
  EXPECT_DOUBLE_EQ(s.at(0), 0.25);
  EXPECT_DOUBLE_EQ(s.at(2), 0.75);
  EXPECT_DOUBLE_EQ(s.at(3), 1.0);
  EXPECT_DOUBLE_EQ(s.at(15), 0.5);  // sqrt(4 / 16)
}

TEST(StepSize, PolynomialDecayStaysPositive) {
  const StepSizeSchedule s(sched::PolynomialDecay{1.0, 9, 1.0});
  EXPECT_EQ(s.at(0), 1.0);
  EXPECT_DOUBLE_EQ(s.at(5), 0.5);
  EXPECT_DOUBLE_EQ(s.at(9), 0.1);
  EXPECT_DOUBLE_EQ(s.at(100), 0.1);
}

TEST(StepSize, InvalidParametersRejected) {
  EXPECT_THROW(StepSizeSchedule(sched::Constant{0.0}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::Constant{-1.0}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::Stagewise{0.1, {5, 5}, 0.1}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::Stagewise{0.1, {5, 3}, 0.1}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::Stagewise{0.1, {5}, 0.0}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::Stagewise{0.1, {5}, 1.5}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::SqrtDecay{1.0, -1.0}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::InverseSqrtWarmup{1.0, 0}), ConfigError);
  EXPECT_THROW(StepSizeSchedule(sched::PolynomialDecay{1.0, 10, 0.0}), ConfigError);
}

TEST(StepSize, AlwaysPositive) {
  const StepSizeSchedule all[] = {
      StepSizeSchedule(sched::Constant{1e-3}), StepSizeSchedule(sched::Stagewise{1e-2, {10, 20, 30}, 0.5}),
      StepSizeSchedule(sched::SqrtDecay{0.3, 2.0}), StepSizeSchedule(sched::InverseSqrtWarmup{0.1, 50}),
      StepSizeSchedule(sched::PolynomialDecay{0.1, 100, 2.0})};
  for (const auto& s : all) {
    for (Step k = 0; k < 2000; ++k) ASSERT_GT(s.at(k), 0.0) << s.describe() << " k=" << k;
  }
}

TEST(Lambda, Examples) {
  EXPECT_EQ(lambda_weight(0.1, 0), 0.1);
  EXPECT_EQ(lambda_weight(0.5, 3), 1.0);
  EXPECT_EQ(lambda_weight(1.0, 99), 10.0);
}

TEST(Lambda, NondecreasingUnderConstantGamma) {
  double prev = 0.0;
  for (Step k = 0; k < 10'000; ++k) {
    const double l = lambda_weight(0.37, k);
    ASSERT_GE(l, prev);
    prev = l;
  }
}

TEST(Momentum, DecayingFirstValueIsOne) {
  // (3/2) / (k + 3/2) is r = 1/2 with j = 1.
  const MomentumSchedule c(sched::DecayingC{0.5, 1.0});
  EXPECT_EQ(c.at(0), 1.0);
  EXPECT_DOUBLE_EQ(c.at(3), 1.0 / 3.0);
  const MomentumSchedule t1 = MomentumSchedule::theorem1();
  for (Step k = 0; k < 100; ++k) EXPECT_DOUBLE_EQ(t1.at(k), 1.5 / (static_cast<double>(k) + 1.5));
}

TEST(Momentum, ConstantMapsToHeavyBallBeta) {
  const MomentumSchedule c(sched::ConstantC{0.1});
  EXPECT_EQ(momentum_coeff(c, 0), 0.1);
  EXPECT_EQ(momentum_coeff(c, 1000), 0.1);
  EXPECT_DOUBLE_EQ(heavy_ball_beta(0.1), 0.9);
}

TEST(Momentum, InvalidRejected) {
  EXPECT_THROW(MomentumSchedule(sched::ConstantC{0.0}), ConfigError);
  EXPECT_THROW(MomentumSchedule(sched::ConstantC{1.5}), ConfigError);
  EXPECT_THROW(MomentumSchedule(sched::DecayingC{0.5, 0.0}), ConfigError);
  EXPECT_THROW(MomentumSchedule(sched::DecayingC{1.0, 1.0}), ConfigError);
}

TEST(Momentum, DecayingValuesInUnitInterval) {
  for (double r : {0.0, 0.25, 0.5, 0.99}) {
    for (double j : {1.0, 2.0, 7.5}) {
      const MomentumSchedule c(sched::DecayingC{r, j});
      for (Step k = 0; k < 500; ++k) {
        const double v = c.at(k);
        ASSERT_GT(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
    }
  }
}

TEST(CkLemma, Examples) {
  EXPECT_TRUE(check_ck_lemma(0.5, 0.0, 10'000));
  EXPECT_TRUE(check_ck_lemma(0.5, 5.0, 1000));
  EXPECT_TRUE(check_ck_lemma(0.999, 0.0, 1000));
  // Independent high-precision evaluation: the tightest margin is exactly 0 (at k = 1).
  EXPECT_NEAR(ck_lemma_margin(0.999, 0.0, 1000), 0.0, 1e-12);
}

TEST(CkLemma, PreconditionsEnforced) {
  EXPECT_THROW(check_ck_lemma(0.0, 1.0, 10), PreconditionError);
  EXPECT_THROW(check_ck_lemma(1.0, 1.0, 10), PreconditionError);
  EXPECT_THROW(check_ck_lemma(0.5, -1.0, 10), PreconditionError);
  EXPECT_THROW(check_ck_lemma(0.5, 1.0, 0), PreconditionError);
}

}  // namespace
}  // namespace madgrad
