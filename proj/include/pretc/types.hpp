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

#ifndef PRETC_TYPES_HPP_
#define PRETC_TYPES_HPP_

#include <array>
#include <cstddef>

namespace pretc {

/// State of the controller's internal prediction model: front motor torque,
/// wheel angular speeds, longitudinal slip speeds and integrated slip-ratio
/// errors, one per driven wheel.
struct InternalState {
  double torque_nm = 0.0;      ///< actual front motor torque [Nm]
  double omega_fl = 0.0;       ///< front-left wheel speed [rad/s]
  double omega_fr = 0.0;       ///< front-right wheel speed [rad/s]
  double slip_speed_fl = 0.0;  ///< front-left slip speed omega*R - V [m/s]
  double slip_speed_fr = 0.0;  ///< front-right slip speed [m/s]
  double eint_fl = 0.0;        ///< integrated slip-ratio error, left [s]
  double eint_fr = 0.0;        ///< integrated slip-ratio error, right [s]

  static constexpr std::size_t kSize = 7;

  std::array<double, kSize> to_array() const {
    return {torque_nm, omega_fl,      omega_fr, slip_speed_fl,
            slip_speed_fr, eint_fl, eint_fr};
  }
  static InternalState from_array(const std::array<double, kSize>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
  }
};

/// Indices into InternalState::to_array(), shared by the linearization code.
enum StateIndex : std::size_t {
  kIdxTorque = 0,
  kIdxOmegaFL = 1,
  kIdxOmegaFR = 2,
  kIdxSlipFL = 3,
  kIdxSlipFR = 4,
  kIdxEintFL = 5,
  kIdxEintFR = 6,
};

/// Control vector: modified torque request plus one slip-ratio slack per
/// driven wheel (the slacks soften the slip constraints, they do not enter
/// the dynamics).
struct ControlInput {
  double torque_mod_nm = 0.0;
  double slack_fl = 0.0;
  double slack_fr = 0.0;

  static constexpr std::size_t kSize = 3;

  std::array<double, kSize> to_array() const {
    return {torque_mod_nm, slack_fl, slack_fr};
  }
  static ControlInput from_array(const std::array<double, kSize>& a) {
    return {a[0], a[1], a[2]};
  }
};

/// Vehicle and powertrain parameters. All values strictly positive; vertical
/// loads are held constant along any one prediction horizon.
struct VehicleParams {
  double mass_kg = 900.0;
  double wheel_radius_m = 0.30;
  double wheel_inertia = 1.2;    ///< [kg m^2]
  double gear_ratio = 9.7;
  double tau_s = 0.140;          ///< first-order powertrain lag time constant
  double fz_fl_n = 2800.0;
  double fz_fr_n = 2800.0;
  double torque_max_nm = 80.0;
  double power_max_w = 30e3;
  /// Floor applied to the wheel tangential speed when evaluating slip ratios.
  /// Keeps the slip ratio finite near standstill and bounds the slip-dynamics
  /// stiffness so the fixed 1 ms integration substep stays stable.
  double slip_speed_eps = 2.0;

  void validate() const;
};

/// Nominal magic-formula coefficients for the high-friction reference curve.
struct TireParams {
  double b0 = 12.0;
  double c0 = 1.65;
  double d0 = 1.0;

  void validate() const;
};

/// Per-stage horizon parameters: friction scale and reference slip ratio per
/// vehicle side, and the (constant) driver torque request.
struct StageParams {
  double mu_fl = 1.0;
  double mu_fr = 1.0;
  double sigma_ref_fl = 0.0;
  double sigma_ref_fr = 0.0;
  double torque_driver_nm = 0.0;
};

}  // namespace pretc

#endif  // PRETC_TYPES_HPP_
