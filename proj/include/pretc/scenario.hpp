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

#ifndef PRETC_SCENARIO_HPP_
#define PRETC_SCENARIO_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "pretc/config.hpp"

namespace pretc {

/// One logged control step of a closed-loop run.
struct Sample {
  double t_s = 0.0;
  double position_m = 0.0;
  double speed_mps = 0.0;
  double torque_driver_nm = 0.0;
  double command_nm = 0.0;
  double torque_actual_nm = 0.0;
  double wheel_speed_fl_mps = 0.0;  ///< tangential, omega * R
  double wheel_speed_fr_mps = 0.0;
  double sigma_fl = 0.0;
  double sigma_fr = 0.0;
  double sigma_ref_fl = 0.0;
  double sigma_ref_fr = 0.0;
  double mu_fl = 0.0;
  double mu_fr = 0.0;
  double solve_time_s = 0.0;  ///< 0 unless timing is enabled
  double kkt_residual = 0.0;
  double min_slack = 0.0;
  int qp_iterations = 0;
  int solver_ok = 1;
};

struct TimeSeries {
  std::vector<Sample> samples;
  ControllerMode mode = ControllerMode::kPassive;
  double plant_tau_s = 0.0;
  double plant_delay_s = 0.0;
  bool compensation = false;
  std::string rmse_window = "low-mu";
};

struct MetricsRow {
  std::string mode;
  double tau_s = 0.0;
  double delay_s = 0.0;
  bool compensation = false;
  double peak_sigma_fr = 0.0;
  double rmse_sigma_fr = 0.0;
  double mean_solve_s = 0.0;
  double max_solve_s = 0.0;
  std::string rmse_window;
};

/// Thrown when a run aborts mid-way; carries the partial log so callers can
/// still flush it.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, TimeSeries partial)
      : std::runtime_error(what), partial_series(std::move(partial)) {}
  TimeSeries partial_series;
};

/// Runs the closed loop: one controller step per Ts, then Ts/dt_plant fine
/// plant steps holding the command. The driver request is the configured
/// demand clipped by the motor torque envelope at the current motor speed.
/// base_dir resolves a relative map_file path.
TimeSeries run_scenario(const ScenarioConfig& cfg,
                        const std::string& base_dir = "");

/// Peak slip and the RMS slip-ratio error over the configured window
/// ("low-mu": from the first sample on reduced friction; "full": all).
MetricsRow metrics(const TimeSeries& series);

}  // namespace pretc

#endif  // PRETC_SCENARIO_HPP_
