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

#ifndef PRETC_SWEEP_HPP_
#define PRETC_SWEEP_HPP_

#include <string>
#include <vector>

#include "pretc/scenario.hpp"

namespace pretc {

struct SweepCell {
  ControllerMode mode = ControllerMode::kNmpc;
  bool compensation = false;
  double tau_s = 0.0;
  double delay_s = 0.0;
};

struct SweepResult {
  std::vector<MetricsRow> rows;       ///< sorted by (mode, comp, tau, delay)
  std::vector<std::string> failures;  ///< one message per failed cell
};

/// Cross product tau x delay x {NMPC, Pre-NMPC w/o comp, Pre-NMPC w comp}.
/// Each cell's powertrain time constant is applied to both the plant and the
/// controller's internal model; the delay is applied to the plant, and to
/// the controller only in the compensated arm. Weights are identical across
/// cells. Failed cells are recorded and the sweep continues.
std::vector<SweepCell> sweep_cells(const std::vector<double>& tau_s,
                                   const std::vector<double>& delay_s);

SweepResult run_sweep(const ScenarioConfig& base,
                      const std::string& base_dir = "", bool parallel = true);

}  // namespace pretc

#endif  // PRETC_SWEEP_HPP_
