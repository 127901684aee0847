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

#include "pretc/model.hpp"

#include <cmath>
#include <stdexcept>

#include "pretc/tire.hpp"

namespace pretc {

std::size_t substep_count(double dt, double substep) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("integrate: dt must be positive");
  }
  if (!(substep > 0.0) || !std::isfinite(substep)) {
    throw std::invalid_argument("integrate: substep must be positive");
  }
  const double ratio = dt / substep;
  const auto n = static_cast<long long>(std::llround(ratio));
  if (n < 1 || std::abs(dt - static_cast<double>(n) * substep) > 1e-9) {
    throw std::invalid_argument(
        "integrate: dt must be an integer multiple of the substep");
  }
  return static_cast<std::size_t>(n);
}

InternalState state_derivative(const InternalState& x, const ControlInput& u,
                               const VehicleParams& p, const TireParams& tire,
                               const StageParams& stage, bool* diag_clamped) {
  for (double v : x.to_array()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("state_derivative: non-finite state");
    }
  }
  if (!std::isfinite(u.torque_mod_nm)) {
    throw std::invalid_argument("state_derivative: non-finite control");
  }

  InternalState dx;
  dx.torque_nm = (u.torque_mod_nm - x.torque_nm) / p.tau_s;

  // Open differential: the axle torque splits equally between the sides.
  const double wheel_torque = x.torque_nm * p.gear_ratio / 2.0;
  const double r = p.wheel_radius_m;
  const double slip_gain = -r * r / p.wheel_inertia - 2.0 / p.mass_kg;

  const double omega[2] = {x.omega_fl, x.omega_fr};
  const double slip_speed[2] = {x.slip_speed_fl, x.slip_speed_fr};
  const double mu[2] = {stage.mu_fl, stage.mu_fr};
  const double fz[2] = {p.fz_fl_n, p.fz_fr_n};
  const double sigma_ref[2] = {stage.sigma_ref_fl, stage.sigma_ref_fr};

  double d_omega[2];
  double d_slip[2];
  double d_eint[2];
  bool clamped_any = false;
  for (int j = 0; j < 2; ++j) {
    bool clamped = false;
    const double sigma =
        slip_ratio(slip_speed[j], omega[j], r, p.slip_speed_eps, &clamped);
    clamped_any = clamped_any || clamped;
    const double fx = tire_force(sigma, mu[j], fz[j], tire);
    d_omega[j] = (wheel_torque - fx * r) / p.wheel_inertia;
    d_slip[j] = slip_gain * fx + wheel_torque * r / p.wheel_inertia;
    d_eint[j] = sigma_ref[j] - sigma;
  }
  if (diag_clamped != nullptr) *diag_clamped = clamped_any;

  dx.omega_fl = d_omega[0];
  dx.omega_fr = d_omega[1];
  dx.slip_speed_fl = d_slip[0];
  dx.slip_speed_fr = d_slip[1];
  dx.eint_fl = d_eint[0];
  dx.eint_fr = d_eint[1];
  return dx;
}

InternalState integrate_step(const InternalState& x, const ControlInput& u,
                             const VehicleParams& p, const TireParams& tire,
                             const StageParams& stage, double dt,
                             double substep) {
  const std::size_t n = substep_count(dt, substep);
  const double h = dt / static_cast<double>(n);
  auto deriv = [&](const std::array<double, InternalState::kSize>& a) {
    return state_derivative(InternalState::from_array(a), u, p, tire, stage)
        .to_array();
  };
  std::array<double, InternalState::kSize> a = x.to_array();
  for (std::size_t i = 0; i < n; ++i) {
    a = rk4_step(a, h, deriv);
  }
  return InternalState::from_array(a);
}

}  // namespace pretc
