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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "madgrad/optimizers.hpp"

namespace madgrad {

/// Flat text snapshot of an optimizer state. One entry per line:
///
///   kind madgrad
///   counter k 12
///   scalar eps 1e-06
///   array x0 3 0.5 -1.25 2
///
/// Decimals are written in shortest round-trip form, so write -> parse is
/// lossless. Lines starting with '#' are comments.
struct StateRecord {
  std::string kind;
  std::map<std::string, std::uint64_t> counters;
  std::map<std::string, double> scalars;
  std::map<std::string, std::vector<double>> arrays;

  std::uint64_t counter(const std::string& name) const;
  double scalar(const std::string& name) const;
  const std::vector<double>& array(const std::string& name) const;

  friend bool operator==(const StateRecord&, const StateRecord&) = default;
};

std::string write_record(const StateRecord& rec);
StateRecord parse_record(std::string_view text);

StateRecord to_record(const MadgradState& st);
MadgradState madgrad_from_record(const StateRecord& rec);

StateRecord to_record(const AdamState& st);
AdamState adam_from_record(const StateRecord& rec);

}  // namespace madgrad
