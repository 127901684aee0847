// Copyright 2026 The pretc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRETC_MODEL_HPP_
#define PRETC_MODEL_HPP_

#include <array>
#include <cstddef>
#include <utility>

#include "pretc/types.hpp"

namespace pretc {

/// Default fixed integration substep [s].
inline constexpr double kDefaultSubstep = 1e-3;

/// Classical fixed-step RK4 over a plain state array.
template <std::size_t N, class Deriv>
std::array<double, N> rk4_step(const std::array<double, N>& x, double h,
                               Deriv&& f) {
  const std::array<double, N> k1 = f(x);
  std::array<double, N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  const std::array<double, N> k2 = f(tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  const std::array<double, N> k3 = f(tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h * k3[i];
  const std::array<double, N> k4 = f(tmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

/// Splits dt into an exact number of substeps. Throws std::invalid_argument
/// unless dt is a positive integer multiple of the substep (to 1e-9 s).
std::size_t substep_count(double dt, double substep);

/// Continuous-time derivative of the internal prediction model: powertrain
/// lag, wheel moment balance with magic-formula forces, slip-speed dynamics
/// (side-specific vehicle acceleration approximation) and the slip-ratio
/// error integrators. If diag_clamped is given it is set when a slip-ratio
/// denominator hit the configured floor.
InternalState state_derivative(const InternalState& x, const ControlInput& u,
                               const VehicleParams& p, const TireParams& tire,
                               const StageParams& stage,
                               bool* diag_clamped = nullptr);

/// Advances x over dt with RK4 at the fixed substep, holding u and stage
/// parameters constant. dt must be a positive integer multiple of substep.
InternalState integrate_step(const InternalState& x, const ControlInput& u,
                             const VehicleParams& p, const TireParams& tire,
                             const StageParams& stage, double dt,
                             double substep = kDefaultSubstep);

}  // namespace pretc

#endif  // PRETC_MODEL_HPP_
