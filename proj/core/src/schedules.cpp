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

#include "madgrad/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "madgrad/error.hpp"

namespace madgrad {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void validate(const StepSizeSchedule::Variant& v) {
  std::visit(Overloaded{
                 [](const sched::Constant& s) {
                   if (!positive_finite(s.gamma)) throw ConfigError("constant schedule: gamma must be > 0");
                 },
                 [](const sched::Stagewise& s) {
                   if (!positive_finite(s.gamma0)) throw ConfigError("stagewise schedule: gamma0 must be > 0");
                   if (!(s.factor > 0.0 && s.factor <= 1.0)) {
                     throw ConfigError("stagewise schedule: factor must lie in (0, 1]");
                   }
                   if (!std::is_sorted(s.boundaries.begin(), s.boundaries.end(), std::less_equal<>())) {
                     throw ConfigError("stagewise schedule: boundaries must be strictly increasing");
                   }
                 },
                 [](const sched::SqrtDecay& s) {
                   if (!positive_finite(s.a)) throw ConfigError("sqrt-decay schedule: a must be > 0");
                   if (!(s.b >= 0.0 && std::isfinite(s.b))) throw ConfigError("sqrt-decay schedule: b must be >= 0");
                 },
                 [](const sched::InverseSqrtWarmup& s) {
                   if (!positive_finite(s.peak)) throw ConfigError("inverse-sqrt schedule: peak must be > 0");
                   if (s.warmup_steps == 0) throw ConfigError("inverse-sqrt schedule: warmup_steps must be >= 1");
                 },
                 [](const sched::PolynomialDecay& s) {
                   if (!positive_finite(s.gamma0)) throw ConfigError("polynomial schedule: gamma0 must be > 0");
                   if (!(s.power > 0.0 && std::isfinite(s.power))) {
                     throw ConfigError("polynomial schedule: power must be > 0");
                   }
                 },
             },
             v);
}

}  // namespace

StepSizeSchedule::StepSizeSchedule(Variant v) : v_(std::move(v)) { validate(v_); }

double StepSizeSchedule::at(Step k) const noexcept {
  const auto kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [](const sched::Constant& s) { return s.gamma; },
          [k](const sched::Stagewise& s) {
            double g = s.gamma0;
            for (Step b : s.boundaries) {
              if (k >= b) g *= s.factor;
            }
            return g;
          },
          [kd](const sched::SqrtDecay& s) { return s.a / std::sqrt(kd + 1.0 + s.b); },
          [k, kd](const sched::InverseSqrtWarmup& s) {
            const auto w = static_cast<double>(s.warmup_steps);
            if (k < s.warmup_steps) return s.peak * (kd + 1.0) / w;
            return s.peak * std::sqrt(w / (kd + 1.0));
          },
          [k](const sched::PolynomialDecay& s) {
            const auto t = static_cast<double>(std::min(k, s.end_step));
            const double frac = 1.0 - t / (static_cast<double>(s.end_step) + 1.0);
            return s.gamma0 * std::pow(frac, s.power);
          },
      },
      v_);
}

std::string StepSizeSchedule::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const sched::Constant& s) { os << "constant(" << s.gamma << ")"; },
                 [&](const sched::Stagewise& s) {
                   os << "stagewise(" << s.gamma0 << ", [";
                   for (std::size_t i = 0; i < s.boundaries.size(); ++i) os << (i ? "," : "") << s.boundaries[i];
                   os << "], " << s.factor << ")";
                 },
                 [&](const sched::SqrtDecay& s) { os << "sqrt_decay(" << s.a << ", " << s.b << ")"; },
                 [&](const sched::InverseSqrtWarmup& s) {
                   os << "inverse_sqrt(" << s.peak << ", warmup " << s.warmup_steps << ")";
                 },
                 [&](const sched::PolynomialDecay& s) {
                   os << "polynomial(" << s.gamma0 << ", end " << s.end_step << ", power " << s.power << ")";
                 },
             },
             v_);
  return os.str();
}

MomentumSchedule::MomentumSchedule(Variant v) : v_(std::move(v)) {
  std::visit(Overloaded{
                 [](const sched::ConstantC& s) {
                   if (!(s.c > 0.0 && s.c <= 1.0)) throw ConfigError("momentum: c must lie in (0, 1]");
                 },
                 [](const sched::DecayingC& s) {
                   if (!(s.r >= 0.0 && s.r < 1.0)) throw ConfigError("momentum: r must lie in [0, 1)");
                   // c_0 = (r+1)/(j+r) <= 1 requires j >= 1.
                   if (!(s.j >= 1.0 && std::isfinite(s.j))) {
                     throw ConfigError("momentum: j must be >= 1 so that c_0 <= 1");
                   }
                 },
             },
             v_);
}

double MomentumSchedule::at(Step k) const noexcept {
  return std::visit(Overloaded{
                        [](const sched::ConstantC& s) { return s.c; },
                        [k](const sched::DecayingC& s) {
                          return (s.r + 1.0) / (static_cast<double>(k) + s.j + s.r);
                        },
                    },
                    v_);
}

std::string MomentumSchedule::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const sched::ConstantC& s) { os << "c=" << s.c; },
                 [&](const sched::DecayingC& s) { os << "c_k=(" << s.r << "+1)/(k+" << s.j << "+" << s.r << ")"; },
             },
             v_);
  return os.str();
}

double step_size(const StepSizeSchedule& s, Step k) noexcept { return s.at(k); }

double lambda_weight(double gamma_k, Step k) noexcept {
  return gamma_k * std::sqrt(static_cast<double>(k) + 1.0);
}

double momentum_coeff(const MomentumSchedule& s, Step k) noexcept { return s.at(k); }

double ck_lemma_margin(double r, double j, Step k_max) {
  if (!(r > 0.0 && r < 1.0) || !(j >= 0.0) || k_max < 1) {
    throw PreconditionError("c_k lemma requires 0 < r < 1, j >= 0 and k_max >= 1");
  }
  const auto c = [&](double k) { return (r + 1.0) / (k + j + r); };
  double worst = std::numeric_limits<double>::infinity();
  for (Step k = 1; k <= k_max; ++k) {
    const auto kd = static_cast<double>(k);
    const double lhs = (1.0 - c(kd)) / c(kd) * std::pow(kd + j, r);
    const double rhs = 1.0 / c(kd - 1.0) * std::pow(kd + j - 1.0, r);
    worst = std::min(worst, (rhs - lhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

bool check_ck_lemma(double r, double j, Step k_max) {
  return ck_lemma_margin(r, j, k_max) >= -1e-12;
}

}  // namespace madgrad
