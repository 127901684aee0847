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

#ifndef PRETC_PLANT_HPP_
#define PRETC_PLANT_HPP_

#include <deque>

#include "pretc/friction_map.hpp"
#include "pretc/tire.hpp"
#include "pretc/types.hpp"

namespace pretc {

/// Plant parameters: the vehicle parameters (with the plant's own powertrain
/// time constant) plus the actuation dead time, the fine integration step and
/// an optional rolling-resistance coefficient.
struct PlantParams {
  VehicleParams vehicle;
  double dt_delay_s = 0.0;
  double dt_plant_s = 2e-4;
  double rolling_resistance = 0.0;

  void validate() const;
};

/// Ground-truth simulator state: a front-driven half vehicle with
/// magic-formula tires on a spatial friction map, first-order powertrain lag
/// and a pure-dead-time command buffer.
struct PlantState {
  double speed_mps = 0.0;
  double position_m = 0.0;
  double omega_fl = 0.0;
  double omega_fr = 0.0;
  double torque_nm = 0.0;
  std::deque<double> delay_buffer;  ///< pending commands, dt_delay/dt_plant deep
};

/// Maximum motor torque at the given motor speed: the torque cap below the
/// base speed, the power envelope above it.
double torque_envelope(double omega_motor, const VehicleParams& p);

class Plant {
 public:
  Plant(PlantParams params, FrictionMap map, TireParams tire);

  /// Advances one fine step: pushes the command through the dead-time
  /// buffer, clamps it with the torque envelope and integrates the rigid
  /// drivetrain/vehicle dynamics with RK4 at dt_plant.
  void step(double command_nm);

  /// Maps the plant state onto the controller's measured state; the slip
  /// error integrators are owned by the controller and passed through.
  InternalState measure(double eint_fl = 0.0, double eint_fr = 0.0) const;

  const PlantState& state() const { return state_; }
  PlantState& state() { return state_; }
  const PlantParams& params() const { return params_; }
  const FrictionMap& map() const { return map_; }

  double motor_speed() const;

 private:
  PlantParams params_;
  FrictionMap map_;
  TireParams tire_;
  PlantState state_;
};

}  // namespace pretc

#endif  // PRETC_PLANT_HPP_
