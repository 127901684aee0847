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

#include "pretc/preview.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pretc/tire.hpp"

namespace pretc {

namespace {
constexpr double kTimeSlack = 1e-9;
}

std::vector<double> future_distances(double s_m, double v_mps, double ts_s,
                                     int n_steps) {
  if (n_steps < 1) {
    throw std::invalid_argument("future_distances: n_steps must be >= 1");
  }
  if (!(v_mps >= 0.0)) {
    throw std::invalid_argument("future_distances: speed must be >= 0");
  }
  std::vector<double> out(static_cast<std::size_t>(n_steps) + 1);
  for (int n = 0; n <= n_steps; ++n) {
    out[static_cast<std::size_t>(n)] = s_m + v_mps * ts_s * n;
  }
  return out;
}

double delay_advance(double v_mps, double dt_delay_s) {
  if (!(dt_delay_s >= 0.0)) {
    throw std::invalid_argument("delay_advance: delay must be >= 0");
  }
  return v_mps * dt_delay_s;
}

PreviewVector sample_preview(const FrictionMap& map, double s_m, double v_mps,
                             double ts_s, int n_steps, double dt_delay_s) {
  const double shift = delay_advance(v_mps, dt_delay_s);
  const std::vector<double> positions =
      future_distances(s_m, v_mps, ts_s, n_steps);
  PreviewVector out;
  out.mu_left.reserve(positions.size());
  out.mu_right.reserve(positions.size());
  for (double pos : positions) {
    out.mu_left.push_back(map.mu_left(pos + shift));
    out.mu_right.push_back(map.mu_right(pos + shift));
  }
  return out;
}

void CommandHistory::push(double t_s, double torque_mod_nm) {
  if (!std::isfinite(t_s) || !std::isfinite(torque_mod_nm)) {
    throw std::invalid_argument("command history: non-finite entry");
  }
  if (!entries_.empty() && !(t_s > entries_.back().first)) {
    throw std::invalid_argument(
        "command history: timestamps must be strictly increasing");
  }
  entries_.emplace_back(t_s, torque_mod_nm);
}

double CommandHistory::command_at(double t_s) const {
  auto it = std::upper_bound(
      entries_.begin(), entries_.end(), t_s + kTimeSlack,
      [](double v, const std::pair<double, double>& e) { return v < e.first; });
  if (it == entries_.begin()) {
    throw std::runtime_error("command history: no entry at or before t=" +
                             std::to_string(t_s));
  }
  return std::prev(it)->second;
}

double CommandHistory::earliest_time() const {
  if (entries_.empty()) {
    throw std::runtime_error("command history: empty");
  }
  return entries_.front().first;
}

double CommandHistory::latest_time() const {
  if (entries_.empty()) {
    throw std::runtime_error("command history: empty");
  }
  return entries_.back().first;
}

void CommandHistory::trim_before(double t_s) {
  auto it = std::upper_bound(
      entries_.begin(), entries_.end(), t_s + kTimeSlack,
      [](double v, const std::pair<double, double>& e) { return v < e.first; });
  if (it == entries_.begin()) return;
  entries_.erase(entries_.begin(), std::prev(it));
}

InternalState predict_initial_state(const InternalState& x_meas,
                                    const CommandHistory& history,
                                    double t_now_s, double dt_delay_s,
                                    const VehicleParams& p,
                                    const TireParams& tire,
                                    const ReferenceSlip& ref_slip,
                                    const FrictionMap& map, double s_m,
                                    double v_mps, double substep) {
  if (dt_delay_s == 0.0) return x_meas;
  const std::size_t n = substep_count(dt_delay_s, substep);
  const double h = dt_delay_s / static_cast<double>(n);
  if (history.empty() ||
      history.earliest_time() > t_now_s - dt_delay_s + kTimeSlack) {
    throw std::runtime_error(
        "predict_initial_state: command history does not span the delay");
  }
  InternalState x = x_meas;
  for (std::size_t i = 0; i < n; ++i) {
    const double local_t = static_cast<double>(i) * h;
    // The command reaching the powertrain now was issued one delay earlier.
    ControlInput u;
    u.torque_mod_nm = history.command_at(t_now_s - dt_delay_s + local_t);
    const double pos = s_m + v_mps * local_t;
    StageParams stage;
    stage.mu_fl = map.mu_left(pos);
    stage.mu_fr = map.mu_right(pos);
    stage.sigma_ref_fl = ref_slip(stage.mu_fl, p.fz_fl_n, tire);
    stage.sigma_ref_fr = ref_slip(stage.mu_fr, p.fz_fr_n, tire);
    x = integrate_step(x, u, p, tire, stage, h, h);
  }
  return x;
}

}  // namespace pretc
