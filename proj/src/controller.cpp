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

#include "pretc/controller.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace pretc {

ControllerMode parse_controller_mode(const std::string& name) {
  if (name == "passive") return ControllerMode::kPassive;
  if (name == "nmpc") return ControllerMode::kNmpc;
  if (name == "pre-nmpc") return ControllerMode::kPreNmpc;
  throw std::invalid_argument("unknown controller mode: " + name);
}

std::string to_string(ControllerMode mode) {
  switch (mode) {
    case ControllerMode::kPassive:
      return "passive";
    case ControllerMode::kNmpc:
      return "nmpc";
    case ControllerMode::kPreNmpc:
      return "pre-nmpc";
  }
  return "?";
}

void ControllerConfig::validate() const {
  if (n_steps < 1) {
    throw std::invalid_argument("controller: n_steps must be >= 1");
  }
  if (!(ts_s > 0.0) || !(substep_s > 0.0)) {
    throw std::invalid_argument("controller: time steps must be positive");
  }
  substep_count(ts_s, substep_s);
  if (dt_delay_s < 0.0) {
    throw std::invalid_argument("controller: delay must be >= 0");
  }
  if (dt_delay_s > 0.0) substep_count(dt_delay_s, substep_s);
  weights.validate();
  vehicle.validate();
  tire.validate();
  if (!(eint_limit_s > 0.0)) {
    throw std::invalid_argument("controller: integrator limit must be > 0");
  }
}

Controller::Controller(ControllerConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
}

void Controller::reset() {
  has_warm_ = false;
  warm_ = OcpSolution{};
  eint_fl_ = 0.0;
  eint_fr_ = 0.0;
}

ControllerStep Controller::step(double t_s, const InternalState& x_meas,
                                const CommandHistory& history,
                                const FrictionMap& map, double s_m,
                                double v_mps, double torque_driver_nm) {
  const auto t_start = std::chrono::steady_clock::now();
  ControllerStep out;

  const VehicleParams& veh = cfg_.vehicle;
  bool clamped_l = false;
  bool clamped_r = false;
  out.sigma_fl = slip_ratio(x_meas.slip_speed_fl, x_meas.omega_fl,
                            veh.wheel_radius_m, veh.slip_speed_eps, &clamped_l);
  out.sigma_fr = slip_ratio(x_meas.slip_speed_fr, x_meas.omega_fr,
                            veh.wheel_radius_m, veh.slip_speed_eps, &clamped_r);
  out.slip_clamped = clamped_l || clamped_r;

  const double mu_now_l = map.mu_left(s_m);
  const double mu_now_r = map.mu_right(s_m);
  out.sigma_ref_fl = cfg_.ref_slip(mu_now_l, veh.fz_fl_n, cfg_.tire);
  out.sigma_ref_fr = cfg_.ref_slip(mu_now_r, veh.fz_fr_n, cfg_.tire);

  if (cfg_.mode == ControllerMode::kPassive) {
    out.command_nm = torque_driver_nm;
    out.solve_time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - t_start)
                           .count();
    return out;
  }

  OcpProblem problem;
  problem.n_steps = cfg_.n_steps;
  problem.ts_s = cfg_.ts_s;
  problem.substep_s = cfg_.substep_s;
  problem.weights = cfg_.weights;
  problem.vehicle = veh;
  problem.tire = cfg_.tire;

  InternalState x_in = x_meas;
  PreviewVector preview;
  if (cfg_.mode == ControllerMode::kPreNmpc) {
    preview = sample_preview(map, s_m, v_mps, cfg_.ts_s, cfg_.n_steps,
                             cfg_.dt_delay_s);
    if (cfg_.dt_delay_s > 0.0) {
      x_in = predict_initial_state(x_meas, history, t_s, cfg_.dt_delay_s, veh,
                                   cfg_.tire, cfg_.ref_slip, map, s_m, v_mps,
                                   cfg_.substep_s);
    }
  } else {
    // Benchmark mode: the current friction condition held along the horizon.
    preview.mu_left.assign(static_cast<std::size_t>(cfg_.n_steps) + 1, mu_now_l);
    preview.mu_right.assign(static_cast<std::size_t>(cfg_.n_steps) + 1,
                            mu_now_r);
  }
  problem.x_in = x_in;
  problem.stages.resize(static_cast<std::size_t>(cfg_.n_steps) + 1);
  for (std::size_t k = 0; k < problem.stages.size(); ++k) {
    StageParams& st = problem.stages[k];
    st.mu_fl = preview.mu_left[k];
    st.mu_fr = preview.mu_right[k];
    st.sigma_ref_fl = cfg_.ref_slip(st.mu_fl, veh.fz_fl_n, cfg_.tire);
    st.sigma_ref_fr = cfg_.ref_slip(st.mu_fr, veh.fz_fr_n, cfg_.tire);
    st.torque_driver_nm = torque_driver_nm;
  }

  OcpSolution warm_shifted;
  const OcpSolution* warm = nullptr;
  if (has_warm_ &&
      warm_.controls.size() == static_cast<std::size_t>(cfg_.n_steps)) {
    warm_shifted = warm_;
    // Standard receding-horizon shift, duplicating the final stage.
    for (std::size_t k = 0; k + 1 < warm_shifted.controls.size(); ++k) {
      warm_shifted.controls[k] = warm_shifted.controls[k + 1];
    }
    warm = &warm_shifted;
  }

  out.solution = rti_step(problem, warm, cfg_.rti);
  warm_ = out.solution;
  has_warm_ = true;

  out.command_nm =
      std::clamp(out.solution.controls.front().torque_mod_nm, 0.0,
                 torque_driver_nm);
  out.min_slack = 0.0;
  for (const ControlInput& u : out.solution.controls) {
    out.min_slack = std::min({out.min_slack, u.slack_fl, u.slack_fr});
  }

  // Integrator bookkeeping for the next step. With anti-windup enabled the
  // integrators freeze while the command sits at the driver request and the
  // error is positive (no authority to add torque).
  const double err[2] = {out.sigma_ref_fl - out.sigma_fl,
                         out.sigma_ref_fr - out.sigma_fr};
  const bool intervening = out.command_nm < 0.995 * torque_driver_nm;
  double* eint[2] = {&eint_fl_, &eint_fr_};
  const double eint_meas[2] = {x_meas.eint_fl, x_meas.eint_fr};
  for (int j = 0; j < 2; ++j) {
    double v = eint_meas[j];
    if (!cfg_.eint_antiwindup || intervening || err[j] < 0.0) {
      v += cfg_.ts_s * err[j];
    }
    *eint[j] = std::clamp(v, -cfg_.eint_limit_s, cfg_.eint_limit_s);
  }

  out.solve_time_s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return out;
}

}  // namespace pretc
