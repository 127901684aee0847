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

#include "pretc/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pretc/model.hpp"

namespace pretc {

namespace {
constexpr double kGravity = 9.80665;
constexpr double kMotorSpeedEps = 1.0;  // [rad/s]
}  // namespace

void PlantParams::validate() const {
  vehicle.validate();
  if (!(dt_plant_s > 0.0 && dt_plant_s <= 1e-3)) {
    throw std::invalid_argument("plant: dt_plant must lie in (0, 1 ms]");
  }
  if (dt_delay_s < 0.0) {
    throw std::invalid_argument("plant: delay must be >= 0");
  }
  if (dt_delay_s > 0.0) {
    substep_count(dt_delay_s, dt_plant_s);
  }
  if (rolling_resistance < 0.0) {
    throw std::invalid_argument("plant: rolling resistance must be >= 0");
  }
}

double torque_envelope(double omega_motor, const VehicleParams& p) {
  if (!(omega_motor >= 0.0)) {
    throw std::invalid_argument("torque_envelope: motor speed must be >= 0");
  }
  return std::min(p.torque_max_nm,
                  p.power_max_w / std::max(omega_motor, kMotorSpeedEps));
}

Plant::Plant(PlantParams params, FrictionMap map, TireParams tire)
    : params_(std::move(params)), map_(std::move(map)), tire_(tire) {
  params_.validate();
  tire_.validate();
  const std::size_t depth =
      params_.dt_delay_s > 0.0
          ? substep_count(params_.dt_delay_s, params_.dt_plant_s)
          : 0;
  state_.delay_buffer.assign(depth, 0.0);
}

double Plant::motor_speed() const {
  return params_.vehicle.gear_ratio * 0.5 * (state_.omega_fl + state_.omega_fr);
}

void Plant::step(double command_nm) {
  if (!std::isfinite(command_nm)) {
    throw std::invalid_argument("plant: non-finite command");
  }
  // Dead time: the command issued now takes effect dt_delay later.
  double effective = command_nm;
  if (!state_.delay_buffer.empty()) {
    state_.delay_buffer.push_back(command_nm);
    effective = state_.delay_buffer.front();
    state_.delay_buffer.pop_front();
  }
  effective = std::min(effective,
                       torque_envelope(std::max(motor_speed(), 0.0),
                                       params_.vehicle));

  const VehicleParams& veh = params_.vehicle;
  const double r = veh.wheel_radius_m;
  const double resistance =
      state_.speed_mps > 1e-9
          ? params_.rolling_resistance * veh.mass_kg * kGravity
          : 0.0;

  // State layout: [torque, omega_fl, omega_fr, speed, position].
  auto deriv = [&](const std::array<double, 5>& x) -> std::array<double, 5> {
    const double torque = x[0];
    const double wheel_torque = torque * veh.gear_ratio / 2.0;
    const double mu_l = map_.mu_left(x[4]);
    const double mu_r = map_.mu_right(x[4]);
    double fx[2];
    const double omega[2] = {x[1], x[2]};
    const double mu[2] = {mu_l, mu_r};
    const double fz[2] = {veh.fz_fl_n, veh.fz_fr_n};
    std::array<double, 5> dx;
    for (int j = 0; j < 2; ++j) {
      const double sigma = slip_ratio(omega[j] * r - x[3], omega[j], r,
                                      veh.slip_speed_eps);
      fx[j] = tire_force(sigma, mu[j], fz[j], tire_);
      dx[static_cast<std::size_t>(1 + j)] =
          (wheel_torque - fx[j] * r) / veh.wheel_inertia;
    }
    dx[0] = (effective - torque) / veh.tau_s;
    dx[3] = (fx[0] + fx[1] - resistance) / veh.mass_kg;
    dx[4] = x[3];
    return dx;
  };

  std::array<double, 5> x = {state_.torque_nm, state_.omega_fl,
                             state_.omega_fr, state_.speed_mps,
                             state_.position_m};
  x = rk4_step(x, params_.dt_plant_s, deriv);
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("plant: simulation diverged (non-finite state)");
    }
  }
  state_.torque_nm = x[0];
  state_.omega_fl = x[1];
  state_.omega_fr = x[2];
  state_.speed_mps = x[3];
  state_.position_m = x[4];
}

InternalState Plant::measure(double eint_fl, double eint_fr) const {
  InternalState out;
  out.torque_nm = state_.torque_nm;
  out.omega_fl = state_.omega_fl;
  out.omega_fr = state_.omega_fr;
  const double r = params_.vehicle.wheel_radius_m;
  out.slip_speed_fl = state_.omega_fl * r - state_.speed_mps;
  out.slip_speed_fr = state_.omega_fr * r - state_.speed_mps;
  out.eint_fl = eint_fl;
  out.eint_fr = eint_fr;
  return out;
}

}  // namespace pretc
