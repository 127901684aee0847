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

#ifndef PRETC_PREVIEW_HPP_
#define PRETC_PREVIEW_HPP_

#include <vector>

#include "pretc/friction_map.hpp"
#include "pretc/model.hpp"
#include "pretc/tire.hpp"
#include "pretc/types.hpp"

namespace pretc {

/// Stage-wise friction preview, one value per side per horizon node
/// (length N+1).
struct PreviewVector {
  std::vector<double> mu_left;
  std::vector<double> mu_right;
};

/// Expected future positions [s, s + v*ts, ..., s + v*n_steps*ts] under the
/// constant-speed assumption; length n_steps + 1.
std::vector<double> future_distances(double s_m, double v_mps, double ts_s,
                                     int n_steps);

/// Distance by which the friction map is advanced to compensate a pure
/// actuation delay: v * dt_delay.
double delay_advance(double v_mps, double dt_delay_s);

/// Samples the friction map at future_distances(...) + delay_advance(...),
/// per side.
PreviewVector sample_preview(const FrictionMap& map, double s_m, double v_mps,
                             double ts_s, int n_steps, double dt_delay_s);

/// Time-stamped record of issued torque commands, kept long enough to span
/// the actuation delay. Timestamps must be strictly increasing.
class CommandHistory {
 public:
  void push(double t_s, double torque_mod_nm);

  /// Zero-order-hold lookup: the command issued at or before t (1 ns slack).
  /// Throws if the history does not reach back to t.
  double command_at(double t_s) const;

  bool empty() const { return entries_.empty(); }
  double earliest_time() const;
  double latest_time() const;
  double span() const { return latest_time() - earliest_time(); }

  /// Drops entries older than t_s except the last one at or before it (which
  /// still defines the held command at t_s).
  void trim_before(double t_s);

  const std::vector<std::pair<double, double>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<double, double>> entries_;
};

/// Predicts the state one actuation delay ahead by integrating the internal
/// model over [t_now, t_now + dt_delay] at the fixed substep. The torque
/// driving the lag during that window is the historically issued command that
/// reaches the powertrain then, i.e. history.command_at(t - dt_delay).
/// Friction and the reference slip are sampled from the map at the advancing
/// position s + v * (t - t_now). dt_delay = 0 returns x_meas unchanged.
InternalState predict_initial_state(const InternalState& x_meas,
                                    const CommandHistory& history,
                                    double t_now_s, double dt_delay_s,
                                    const VehicleParams& p,
                                    const TireParams& tire,
                                    const ReferenceSlip& ref_slip,
                                    const FrictionMap& map, double s_m,
                                    double v_mps,
                                    double substep = kDefaultSubstep);

}  // namespace pretc

#endif  // PRETC_PREVIEW_HPP_
