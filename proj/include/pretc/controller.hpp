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

#ifndef PRETC_CONTROLLER_HPP_
#define PRETC_CONTROLLER_HPP_

#include <string>

#include "pretc/friction_map.hpp"
#include "pretc/ocp.hpp"
#include "pretc/preview.hpp"
#include "pretc/tire.hpp"
#include "pretc/types.hpp"

namespace pretc {

enum class ControllerMode {
  kPassive,   ///< no intervention, command equals the driver request
  kNmpc,      ///< instantaneous friction held constant along the horizon
  kPreNmpc,   ///< spatial friction preview plus delay compensation
};

ControllerMode parse_controller_mode(const std::string& name);
std::string to_string(ControllerMode mode);

struct ControllerConfig {
  ControllerMode mode = ControllerMode::kPreNmpc;
  double ts_s = 0.025;
  int n_steps = 10;
  double substep_s = kDefaultSubstep;
  Weights weights;
  VehicleParams vehicle;  ///< includes the assumed powertrain time constant
  TireParams tire;
  /// Assumed actuation dead time, compensated by advancing the friction map
  /// and predicting the initial state. Ignored in the non-pre-emptive mode.
  double dt_delay_s = 0.0;
  ReferenceSlip ref_slip;
  RtiOptions rti;
  /// Freeze the slip-error integrators while the controller is not reducing
  /// torque and the error is positive (saturation anti-windup).
  bool eint_antiwindup = true;
  double eint_limit_s = 1.0;

  void validate() const;
};

struct ControllerStep {
  double command_nm = 0.0;
  OcpSolution solution;  ///< empty in passive mode
  double sigma_fl = 0.0;
  double sigma_fr = 0.0;
  double sigma_ref_fl = 0.0;
  double sigma_ref_fr = 0.0;
  double min_slack = 0.0;
  bool slip_clamped = false;
  double solve_time_s = 0.0;  ///< full controller computation time
};

/// One traction-controller instance. Owns the warm-start memory and the
/// slip-error integrator bookkeeping; single-threaded, one instance per
/// scenario run.
class Controller {
 public:
  explicit Controller(ControllerConfig cfg);

  /// Computes the torque command for the measured state at time t. x_meas
  /// carries the controller-maintained integrator states (see eint_fl()).
  /// history must span the configured delay when compensation is active.
  ControllerStep step(double t_s, const InternalState& x_meas,
                      const CommandHistory& history, const FrictionMap& map,
                      double s_m, double v_mps, double torque_driver_nm);

  void reset();

  double eint_fl() const { return eint_fl_; }
  double eint_fr() const { return eint_fr_; }
  const ControllerConfig& config() const { return cfg_; }

 private:
  ControllerConfig cfg_;
  bool has_warm_ = false;
  OcpSolution warm_;
  double eint_fl_ = 0.0;
  double eint_fr_ = 0.0;
};

}  // namespace pretc

#endif  // PRETC_CONTROLLER_HPP_
