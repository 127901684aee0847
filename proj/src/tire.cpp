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

#include "pretc/tire.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pretc {

void VehicleParams::validate() const {
  const double vals[] = {mass_kg,  wheel_radius_m, wheel_inertia,
                         gear_ratio, tau_s,        fz_fl_n,
                         fz_fr_n,  torque_max_nm,  power_max_w,
                         slip_speed_eps};
  for (double v : vals) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("vehicle parameters must be strictly positive");
    }
  }
}

void TireParams::validate() const {
  if (!(b0 > 0.0)) throw std::invalid_argument("tire: B0 must be > 0");
  if (!(c0 > 1.0 && c0 < 2.0)) {
    throw std::invalid_argument("tire: C0 must lie in (1, 2)");
  }
  if (!(d0 > 0.0 && d0 <= 1.2)) {
    throw std::invalid_argument("tire: D0 must lie in (0, 1.2]");
  }
}

double mf_mu_x(double sigma, double mu, const TireParams& tire) {
  if (!std::isfinite(sigma)) {
    throw std::invalid_argument("mf_mu_x: non-finite slip ratio");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("mf_mu_x: friction scale must be > 0");
  }
  const double b = tire.b0 / mu;
  const double d = tire.d0 * mu;
  return d * std::sin(tire.c0 * std::atan(b * sigma));
}

double tire_force(double sigma, double mu, double fz, const TireParams& tire) {
  if (!(fz > 0.0) || !std::isfinite(fz)) {
    throw std::invalid_argument("tire_force: vertical load must be > 0");
  }
  return mf_mu_x(sigma, mu, tire) * fz;
}

double slip_ratio(double slip_speed, double omega, double radius, double eps,
                  bool* clamped) {
  const double tangential = omega * radius;
  const double den = std::max(tangential, eps);
  if (clamped != nullptr) *clamped = tangential < eps;
  return slip_speed / den;
}

double mf_peak_slip(double mu, const TireParams& tire) {
  if (!(mu > 0.0)) throw std::invalid_argument("mf_peak_slip: mu must be > 0");
  return mu * std::tan(std::numbers::pi / (2.0 * tire.c0)) / tire.b0;
}

namespace {

// Index of the grid cell containing v, clamped to the grid interior.
std::size_t cell_index(const std::vector<double>& grid, double v) {
  if (v <= grid.front()) return 0;
  if (v >= grid.back()) return grid.size() - 2;
  auto it = std::upper_bound(grid.begin(), grid.end(), v);
  return static_cast<std::size_t>(it - grid.begin()) - 1;
}

double cell_weight(const std::vector<double>& grid, std::size_t i, double v) {
  const double lo = grid[i];
  const double hi = grid[i + 1];
  return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
}

}  // namespace

ReferenceSlip::ReferenceSlip(std::vector<double> mu_grid,
                             std::vector<double> fz_grid,
                             std::vector<std::vector<double>> sigma)
    : mu_grid_(std::move(mu_grid)),
      fz_grid_(std::move(fz_grid)),
      sigma_(std::move(sigma)) {
  if (mu_grid_.size() < 2 || fz_grid_.size() < 2) {
    throw std::invalid_argument("reference slip table: need at least a 2x2 grid");
  }
  for (std::size_t i = 1; i < mu_grid_.size(); ++i) {
    if (!(mu_grid_[i] > mu_grid_[i - 1])) {
      throw std::invalid_argument("reference slip table: mu grid not increasing");
    }
  }
  for (std::size_t i = 1; i < fz_grid_.size(); ++i) {
    if (!(fz_grid_[i] > fz_grid_[i - 1])) {
      throw std::invalid_argument("reference slip table: fz grid not increasing");
    }
  }
  if (sigma_.size() != mu_grid_.size()) {
    throw std::invalid_argument("reference slip table: row count mismatch");
  }
  for (const auto& row : sigma_) {
    if (row.size() != fz_grid_.size()) {
      throw std::invalid_argument("reference slip table: column count mismatch");
    }
    for (double s : row) {
      if (!(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument(
            "reference slip table: entries must lie in (0, 1)");
      }
    }
  }
}

double ReferenceSlip::operator()(double mu, double fz,
                                 const TireParams& tire) const {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("reference slip: mu must be > 0");
  }
  if (!is_table()) {
    return mf_peak_slip(mu, tire);
  }
  const std::size_t i = cell_index(mu_grid_, mu);
  const std::size_t j = cell_index(fz_grid_, fz);
  const double wi = cell_weight(mu_grid_, i, mu);
  const double wj = cell_weight(fz_grid_, j, fz);
  const double s00 = sigma_[i][j];
  const double s01 = sigma_[i][j + 1];
  const double s10 = sigma_[i + 1][j];
  const double s11 = sigma_[i + 1][j + 1];
  return (1.0 - wi) * ((1.0 - wj) * s00 + wj * s01) +
         wi * ((1.0 - wj) * s10 + wj * s11);
}

}  // namespace pretc
