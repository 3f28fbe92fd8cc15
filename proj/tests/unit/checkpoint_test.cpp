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

#include <gtest/gtest.h>

#include "madgrad/checkpoint.hpp"
#include "madgrad/error.hpp"

namespace madgrad {
namespace {

MadgradState trained_madgrad() {
  Rng rng(1);
  auto st = MadgradState::init(ParamVector{0.1, -0.2, 0.3}, 1e-6, 1e-4);
  for (int k = 0; k < 7; ++k) st = madgrad_step(std::move(st), ParamVector{rng.normal(), rng.normal(), rng.normal()}, 0.1, 0.2);
  return st;
}

TEST(Checkpoint, MadgradRoundTripIsExact) {
  const MadgradState st = trained_madgrad();
  const MadgradState back = madgrad_from_record(parse_record(write_record(to_record(st))));
  EXPECT_EQ(back.x0, st.x0);
  EXPECT_EQ(back.s, st.s);
  EXPECT_EQ(back.nu, st.nu);
  EXPECT_EQ(back.z, st.z);
  EXPECT_EQ(back.x, st.x);
  EXPECT_EQ(back.k, st.k);
  EXPECT_EQ(back.eps, st.eps);
  EXPECT_EQ(back.weight_decay, st.weight_decay);
  // Resuming must continue the exact trajectory.
  const ParamVector g{0.5, 0.25, -1.0};
  EXPECT_EQ(madgrad_step(back, g, 0.1, 0.2).x, madgrad_step(st, g, 0.1, 0.2).x);
}

TEST(Checkpoint, TheoreticalBoundSurvives) {
  auto st = MadgradState::init_theoretical(ParamVector{0.0, 1.0}, ParamVector{1.0, 2.0});
  st = madgrad_theoretical_step(std::move(st), ParamVector{0.5, -1.5}, 0.1, 0.5);
  const MadgradState back = madgrad_from_record(parse_record(write_record(to_record(st))));
  ASSERT_TRUE(back.g_bound.has_value());
  EXPECT_EQ(*back.g_bound, *st.g_bound);
}

TEST(Checkpoint, AdamRoundTripIsExact) {
  auto st = AdamState::init(ParamVector{1.0, 2.0}, 0.8, 0.99, 1e-7, true);
  st = adam_step(std::move(st), ParamVector{0.3, -0.7}, 0.01);
  st = adam_step(std::move(st), ParamVector{1.3, 0.1}, 0.01);
  const AdamState back = adam_from_record(parse_record(write_record(to_record(st))));
  EXPECT_EQ(back.x, st.x);
  EXPECT_EQ(back.m, st.m);
  EXPECT_EQ(back.v, st.v);
  EXPECT_EQ(back.v_max, st.v_max);
  EXPECT_EQ(back.k, st.k);
  EXPECT_EQ(back.amsgrad, st.amsgrad);
  EXPECT_EQ(back.beta1, st.beta1);
}

TEST(Checkpoint, RecordTextRoundTrip) {
  const StateRecord rec = to_record(trained_madgrad());
  const std::string text = write_record(rec);
  EXPECT_EQ(parse_record(text), rec);
  EXPECT_EQ(write_record(parse_record(text)), text);
}

TEST(Checkpoint, MissingOrMalformedFieldsRejected) {
  StateRecord rec = to_record(trained_madgrad());
  rec.arrays.erase("nu");
  EXPECT_THROW(madgrad_from_record(rec), ConfigError);
  EXPECT_THROW(rec.scalar("nope"), ConfigError);
  EXPECT_THROW(parse_record("counter k 3\n"), ConfigError);
  EXPECT_THROW(parse_record("kind madgrad\narray x 3 1 2\n"), ConfigError);
  EXPECT_THROW(parse_record("kind madgrad\nbogus x 1\n"), ConfigError);
  EXPECT_THROW(adam_from_record(to_record(trained_madgrad())), ConfigError);
}

}  // namespace
}  // namespace madgrad
