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

#ifndef PRETC_CONFIG_HPP_
#define PRETC_CONFIG_HPP_

#include <string>
#include <vector>

#include "pretc/controller.hpp"
#include "pretc/plant.hpp"

namespace pretc {

/// Controller timing presets.
enum class Profile { kExperiment, kSimulation };

Profile parse_profile(const std::string& name);
std::string to_string(Profile profile);

/// Full scenario description: controller and plant parameterization, the
/// friction map, the driver request and output options. Serialized as plain
/// "key = value" text with [sections]; every run writes the fully resolved
/// configuration next to its outputs.
struct ScenarioConfig {
  // [scenario]
  ControllerMode mode = ControllerMode::kPreNmpc;
  Profile profile = Profile::kExperiment;
  double duration_s = 3.0;
  double demand_nm = 80.0;
  std::string map_file;     ///< optional; inline step map used when empty
  double map_high_mu = 1.0;
  double map_low_mu = 0.12;
  double map_step_m = 3.0;
  std::string rmse_window = "low-mu";  ///< "low-mu" | "full"
  bool timing = false;  ///< record wall-clock solve times in outputs
  std::string out_dir = "out";

  // [controller]
  double ctrl_ts_s = 0.025;
  int ctrl_n_steps = 10;
  double ctrl_substep_s = 1e-3;
  double ctrl_tau_s = 0.140;
  double ctrl_delay_comp_s = 0.0;
  double w_slack = 1e6;
  double w_torque = 1e-4;
  double w_eint = 5e2;
  double lm_damping = 0.02;
  bool eint_antiwindup = true;
  double eint_limit_s = 1.0;

  // [vehicle]
  VehicleParams vehicle;  ///< tau_s member is the controller's assumed value

  // [tire]
  TireParams tire;

  // [plant]
  double plant_tau_s = 0.140;
  double plant_delay_s = 0.0;
  double plant_dt_s = 2e-4;
  double rolling_resistance = 0.0;

  // [sweep]
  std::vector<double> sweep_tau_s = {0.040, 0.090, 0.140};
  std::vector<double> sweep_delay_s = {0.0, 0.030, 0.060};

  /// Parses a config file. Unknown sections or keys are rejected. Explicit
  /// ts/n keys override the profile preset.
  static ScenarioConfig load(const std::string& path);
  static ScenarioConfig parse(const std::string& text,
                              const std::string& origin);

  /// Writes the fully resolved configuration (every key, current values).
  void save(const std::string& path) const;
  std::string to_text() const;

  void validate() const;

  /// The friction map: loaded from map_file (resolved relative to base_dir
  /// when relative) or the inline high->low step.
  FrictionMap friction_map(const std::string& base_dir = "") const;

  ControllerConfig controller_config() const;
  PlantParams plant_params() const;
};

}  // namespace pretc

#endif  // PRETC_CONFIG_HPP_
