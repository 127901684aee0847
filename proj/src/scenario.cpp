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

#include "pretc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pretc/model.hpp"
#include "pretc/preview.hpp"

namespace pretc {

TimeSeries run_scenario(const ScenarioConfig& cfg,
                        const std::string& base_dir) {
  cfg.validate();
  const FrictionMap map = cfg.friction_map(base_dir);
  Controller controller(cfg.controller_config());
  Plant plant(cfg.plant_params(), map, cfg.tire);

  TimeSeries series;
  series.mode = cfg.mode;
  series.plant_tau_s = cfg.plant_tau_s;
  series.plant_delay_s = cfg.plant_delay_s;
  series.compensation =
      cfg.mode == ControllerMode::kPreNmpc && cfg.ctrl_delay_comp_s > 0.0;
  series.rmse_window = cfg.rmse_window;

  CommandHistory history;
  // No commands were issued before the run; seed the span the predictor
  // needs with a zero command well in the past.
  history.push(-10.0, 0.0);

  const int n_ctrl_steps =
      static_cast<int>(std::llround(cfg.duration_s / cfg.ctrl_ts_s));
  const std::size_t n_plant_steps = substep_count(cfg.ctrl_ts_s, cfg.plant_dt_s);

  for (int k = 0; k < n_ctrl_steps; ++k) {
    const double t = static_cast<double>(k) * cfg.ctrl_ts_s;
    const PlantState& ps = plant.state();
    const double torque_driver =
        std::min(cfg.demand_nm,
                 torque_envelope(std::max(plant.motor_speed(), 0.0),
                                 cfg.plant_params().vehicle));
    const InternalState x_meas =
        plant.measure(controller.eint_fl(), controller.eint_fr());

    Sample s;
    s.t_s = t;
    s.position_m = ps.position_m;
    s.speed_mps = ps.speed_mps;
    s.torque_driver_nm = torque_driver;
    s.torque_actual_nm = ps.torque_nm;
    s.wheel_speed_fl_mps = ps.omega_fl * cfg.vehicle.wheel_radius_m;
    s.wheel_speed_fr_mps = ps.omega_fr * cfg.vehicle.wheel_radius_m;
    s.mu_fl = map.mu_left(ps.position_m);
    s.mu_fr = map.mu_right(ps.position_m);

    ControllerStep step;
    try {
      step = controller.step(t, x_meas, history, map, ps.position_m,
                             ps.speed_mps, torque_driver);
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("controller failed at t=") +
                              std::to_string(t) + ": " + e.what(),
                          std::move(series));
    }
    history.push(t, step.command_nm);
    history.trim_before(t - cfg.ctrl_delay_comp_s - 1.0);

    s.command_nm = step.command_nm;
    s.sigma_fl = step.sigma_fl;
    s.sigma_fr = step.sigma_fr;
    s.sigma_ref_fl = step.sigma_ref_fl;
    s.sigma_ref_fr = step.sigma_ref_fr;
    s.solve_time_s = cfg.timing ? step.solve_time_s : 0.0;
    s.kkt_residual = step.solution.kkt_residual;
    s.min_slack = step.min_slack;
    s.qp_iterations = step.solution.qp_iterations;
    s.solver_ok = step.solution.status == SolveStatus::kOk ? 1 : 0;
    series.samples.push_back(s);

    try {
      for (std::size_t i = 0; i < n_plant_steps; ++i) {
        plant.step(step.command_nm);
      }
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("plant failed at t=") +
                              std::to_string(t) + ": " + e.what(),
                          std::move(series));
    }
  }
  return series;
}

MetricsRow metrics(const TimeSeries& series) {
  if (series.samples.empty()) {
    throw std::invalid_argument("metrics: empty series");
  }
  MetricsRow row;
  row.mode = to_string(series.mode);
  row.tau_s = series.plant_tau_s;
  row.delay_s = series.plant_delay_s;
  row.compensation = series.compensation;
  row.rmse_window = series.rmse_window;

  double peak = -std::numeric_limits<double>::infinity();
  for (const Sample& s : series.samples) {
    peak = std::max(peak, s.sigma_fr);
  }
  row.peak_sigma_fr = peak;

  std::size_t window_begin = 0;
  if (series.rmse_window == "low-mu") {
    const double mu_start = series.samples.front().mu_fr;
    window_begin = series.samples.size();
    for (std::size_t i = 0; i < series.samples.size(); ++i) {
      if (series.samples[i].mu_fr < mu_start) {
        window_begin = i;
        break;
      }
    }
  }
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = window_begin; i < series.samples.size(); ++i) {
    const double err =
        series.samples[i].sigma_ref_fr - series.samples[i].sigma_fr;
    sum_sq += err * err;
    ++count;
  }
  row.rmse_sigma_fr = count > 0 ? std::sqrt(sum_sq / count) : 0.0;

  double sum_t = 0.0;
  double max_t = 0.0;
  for (const Sample& s : series.samples) {
    sum_t += s.solve_time_s;
    max_t = std::max(max_t, s.solve_time_s);
  }
  row.mean_solve_s = sum_t / static_cast<double>(series.samples.size());
  row.max_solve_s = max_t;
  return row;
}

}  // namespace pretc
