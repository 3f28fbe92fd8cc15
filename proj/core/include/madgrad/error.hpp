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

#include <stdexcept>
#include <string>

namespace madgrad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of different lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation (NaN gradient,
/// nonpositive scaling, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// A gradient exceeded the declared bound G of the theoretical variant.
class GradientBoundError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition of a verification routine does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid or incompatible configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace madgrad
