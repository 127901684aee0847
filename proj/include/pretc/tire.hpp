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

#ifndef PRETC_TIRE_HPP_
#define PRETC_TIRE_HPP_

#include <vector>

#include "pretc/types.hpp"

namespace pretc {

/// Longitudinal force coefficient of the simplified single-peak magic
/// formula, D*sin(C0*atan(B*sigma)) with B = B0/mu and D = D0*mu.
/// Odd in sigma. Throws std::invalid_argument on non-finite sigma or mu <= 0.
double mf_mu_x(double sigma, double mu, const TireParams& tire);

/// Longitudinal tire force, mf_mu_x(sigma, mu) * fz. Requires fz > 0.
double tire_force(double sigma, double mu, double fz, const TireParams& tire);

/// Slip ratio s / (omega * r) with the denominator floored at eps.
/// When the floor engages, *clamped (if given) is set to true.
double slip_ratio(double slip_speed, double omega, double radius, double eps,
                  bool* clamped = nullptr);

/// Peak-slip location of the magic formula: sigma* = mu * tan(pi/(2*C0)) / B0.
double mf_peak_slip(double mu, const TireParams& tire);

/// Reference slip-ratio map. The default returns the analytic peak slip of
/// the magic formula (load independent); an optional breakpoint table keyed
/// on (mu, fz) overrides it, interpolated bilinearly with clamped edges.
class ReferenceSlip {
 public:
  ReferenceSlip() = default;

  /// Table override. mu_grid and fz_grid must be strictly increasing, sigma
  /// is indexed [i_mu][i_fz] and every entry must lie in (0, 1).
  ReferenceSlip(std::vector<double> mu_grid, std::vector<double> fz_grid,
                std::vector<std::vector<double>> sigma);

  double operator()(double mu, double fz, const TireParams& tire) const;

  bool is_table() const { return !mu_grid_.empty(); }

 private:
  std::vector<double> mu_grid_;
  std::vector<double> fz_grid_;
  std::vector<std::vector<double>> sigma_;
};

}  // namespace pretc

#endif  // PRETC_TIRE_HPP_
