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

#include "pretc/sweep.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <tuple>

namespace pretc {

std::vector<SweepCell> sweep_cells(const std::vector<double>& tau_s,
                                   const std::vector<double>& delay_s) {
  if (tau_s.empty() || delay_s.empty()) {
    throw std::invalid_argument("sweep: tau and delay lists must be nonempty");
  }
  std::vector<SweepCell> cells;
  for (double tau : tau_s) {
    for (double delay : delay_s) {
      cells.push_back({ControllerMode::kNmpc, false, tau, delay});
      cells.push_back({ControllerMode::kPreNmpc, false, tau, delay});
      cells.push_back({ControllerMode::kPreNmpc, true, tau, delay});
    }
  }
  return cells;
}

namespace {

ScenarioConfig cell_config(const ScenarioConfig& base, const SweepCell& cell) {
  ScenarioConfig cfg = base;
  cfg.mode = cell.mode;
  cfg.ctrl_tau_s = cell.tau_s;  // internal model matches the plant
  cfg.plant_tau_s = cell.tau_s;
  cfg.plant_delay_s = cell.delay_s;
  cfg.ctrl_delay_comp_s = cell.compensation ? cell.delay_s : 0.0;
  return cfg;
}

struct CellOutcome {
  bool ok = false;
  MetricsRow row;
  std::string error;
};

CellOutcome run_cell(const ScenarioConfig& base, const SweepCell& cell,
                     const std::string& base_dir) {
  CellOutcome out;
  try {
    const TimeSeries series = run_scenario(cell_config(base, cell), base_dir);
    out.row = metrics(series);
    // The plain pre-nmpc mode runs twice per (tau, delay) point, with and
    // without compensation; tag the rows apart.
    out.row.compensation = cell.compensation;
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = std::string("cell mode=") + to_string(cell.mode) +
                (cell.compensation ? "+comp" : "") +
                " tau=" + std::to_string(cell.tau_s) +
                " delay=" + std::to_string(cell.delay_s) + ": " + e.what();
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const ScenarioConfig& base, const std::string& base_dir,
                      bool parallel) {
  const std::vector<SweepCell> cells =
      sweep_cells(base.sweep_tau_s, base.sweep_delay_s);

  std::vector<CellOutcome> outcomes(cells.size());
  if (parallel) {
    std::vector<std::future<CellOutcome>> futures;
    futures.reserve(cells.size());
    for (const SweepCell& cell : cells) {
      futures.push_back(std::async(std::launch::async, run_cell,
                                   std::cref(base), cell,
                                   std::cref(base_dir)));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      outcomes[i] = futures[i].get();
    }
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      outcomes[i] = run_cell(base, cells[i], base_dir);
    }
  }

  SweepResult result;
  for (const CellOutcome& o : outcomes) {
    if (o.ok) {
      result.rows.push_back(o.row);
    } else {
      result.failures.push_back(o.error);
    }
  }
  std::sort(result.rows.begin(), result.rows.end(),
            [](const MetricsRow& a, const MetricsRow& b) {
              return std::tie(a.mode, a.compensation, a.tau_s, a.delay_s) <
                     std::tie(b.mode, b.compensation, b.tau_s, b.delay_s);
            });
  return result;
}

}  // namespace pretc
