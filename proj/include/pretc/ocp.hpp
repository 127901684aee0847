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

#ifndef PRETC_OCP_HPP_
#define PRETC_OCP_HPP_

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <vector>

#include "pretc/model.hpp"
#include "pretc/qp.hpp"
#include "pretc/types.hpp"

namespace pretc {

/// Stage-cost weights. The slack weights must dominate the torque weight by
/// at least 1e3 so the soft slip constraints bind before torque tracking
/// relaxes.
struct Weights {
  double slack_fl = 1e6;
  double slack_fr = 1e6;
  double torque = 1e-4;  ///< [1/Nm^2]
  double eint_fl = 5e2;  ///< [1/s^2]
  double eint_fr = 5e2;

  void validate() const;
};

/// Discretized optimal control problem over one horizon: initial state,
/// stage parameters (length n_steps + 1), weights and bounds. The torque is
/// bounded to [0, torque_driver]; slacks are nonnegative; state bounds
/// default to +/- infinity.
struct OcpProblem {
  InternalState x_in;
  int n_steps = 10;
  double ts_s = 0.025;
  double substep_s = kDefaultSubstep;
  std::vector<StageParams> stages;  ///< n_steps + 1 entries
  Weights weights;
  VehicleParams vehicle;
  TireParams tire;
  std::array<double, InternalState::kSize> x_lower{
      -std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity(),
      -std::numeric_limits<double>::infinity()};
  std::array<double, InternalState::kSize> x_upper{
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity()};

  double torque_driver() const { return stages.front().torque_driver_nm; }
  void validate() const;
};

enum class SolveStatus {
  kOk,
  kIterationLimit,
};

struct OcpSolution {
  std::vector<ControlInput> controls;  ///< n_steps entries
  std::vector<InternalState> states;   ///< n_steps + 1, resimulated
  double kkt_residual = 0.0;
  SolveStatus status = SolveStatus::kOk;
  int qp_iterations = 0;
  double solve_time_s = 0.0;
};

struct RtiOptions {
  /// Levenberg-Marquardt damping on the control increments [1/Nm^2]. Keeps a
  /// single Gauss-Newton iteration inside the region where the stage
  /// linearizations are trustworthy.
  double lm_damping = 0.02;
  QpOptions qp;
};

/// Quadratic stage cost: slack, torque-deviation and integral-error terms.
double stage_cost(const InternalState& x, const ControlInput& u,
                  double torque_driver_nm, const Weights& w);

struct StageLinearization {
  InternalState f;                                          ///< f_d(x, u)
  Eigen::Matrix<double, 7, 7> a;                            ///< df/dx
  Eigen::Matrix<double, 7, 3> b;                            ///< df/du
};

/// Integrates one stage and differentiates the integrated map by forward
/// finite differences with step max(1e-6, 1e-6*|value|).
StageLinearization discretize_and_linearize(const InternalState& x,
                                            const ControlInput& u,
                                            const VehicleParams& p,
                                            const TireParams& tire,
                                            const StageParams& stage,
                                            double ts_s, double substep_s);

/// One real-time-iteration SQP step: forward-simulates the shooting nodes
/// from the warm start, linearizes every stage, condenses the linearized
/// problem with the soft slip-constraint rows and hard torque bounds into a
/// dense QP in the control increments, solves it with the primal active-set
/// method and expands. The returned state trajectory is re-simulated with
/// the new controls, so the shooting gaps are exactly closed.
OcpSolution rti_step(const OcpProblem& problem,
                     const OcpSolution* warm = nullptr,
                     const RtiOptions& opts = {});

}  // namespace pretc

#endif  // PRETC_OCP_HPP_
