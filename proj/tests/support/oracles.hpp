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

// Reference computations that share no code with the library under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace madgrad::oracle {

// Minimizes sum_d q_d / s_d over { s > 0, ||s||_2^2 = c } by gradient steps
// followed by projection back onto the sphere, with backtracking.
inline std::vector<double> projected_gradient_allocation(const std::vector<double>& q, double c,
                                                         std::size_t max_iter = 200'000) {
  const std::size_t n = q.size();
  auto objective = [&](const std::vector<double>& s) {
    double f = 0.0;
    for (std::size_t d = 0; d < n; ++d) f += q[d] / s[d];
    return f;
  };
  auto project = [&](std::vector<double>& s) {
    double norm = 0.0;
    for (double v : s) norm += v * v;
    const double scale = std::sqrt(c / norm);
    for (double& v : s) v *= scale;
  };
  std::vector<double> s(n, 1.0);
  project(s);
  double f = objective(s);
  double step = 1e-2;
  std::vector<double> trial(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    bool moved = false;
    for (int tries = 0; tries < 60; ++tries) {
      for (std::size_t d = 0; d < n; ++d) {
        trial[d] = std::max(s[d] + step * q[d] / (s[d] * s[d]), 1e-300);
      }
      project(trial);
      const double ft = objective(trial);
      if (ft < f) {
        s.swap(trial);
        f = ft;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return s;
}

// Brute-force maximum of <-s, x - x0> - 1/2 sum_d a_d (x_d - x0_d)^2 over a
// box grid followed by local refinement, one coordinate at a time.
inline double grid_support_value(const std::vector<double>& a, const std::vector<double>& s) {
  double total = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    auto h = [&](double y) { return -s[d] * y - 0.5 * a[d] * y * y; };
    double lo = -100.0, hi = 100.0;
    for (int round = 0; round < 8; ++round) {
      double best_y = lo;
      double best = -std::numeric_limits<double>::infinity();
      const int n = 2000;
      for (int i = 0; i <= n; ++i) {
        const double y = lo + (hi - lo) * i / n;
        if (h(y) > best) {
          best = h(y);
          best_y = y;
        }
      }
      const double width = (hi - lo) / n;
      lo = best_y - 2 * width;
      hi = best_y + 2 * width;
    }
    total += h(0.5 * (lo + hi));
  }
  return total;
}

}  // namespace madgrad::oracle
