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

#include <string>
#include <string_view>
#include <vector>

#include "madgrad/bench/config.hpp"

namespace madgrad::bench {

struct Preset {
  std::string name;
  std::string summary;
  RunConfig config;
};

/// Shipped experiments. The per-method step sizes and decays of the
/// deep-learning tables are kept verbatim; each task is replaced by a convex
/// stand-in and its step budget and schedule breakpoints are scaled down.
const std::vector<Preset>& presets();

/// nullptr when unknown.
const Preset* find_preset(std::string_view name);

}  // namespace madgrad::bench
