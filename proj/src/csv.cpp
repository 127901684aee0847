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

#include "pretc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pretc {

namespace {

const char kSeriesHeader[] =
    "t_s,pos_m,speed_mps,t_driver_nm,t_cmd_nm,t_motor_nm,"
    "wheel_speed_fl_mps,wheel_speed_fr_mps,sigma_fl,sigma_fr,"
    "sigma_ref_fl,sigma_ref_fr,mu_fl,mu_fr,solve_time_s,kkt_residual,"
    "min_slack,qp_iterations,solver_ok";

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("csv: cannot write " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("csv: write failed for " + path);
  }
}

}  // namespace

std::string series_csv(const TimeSeries& series) {
  std::ostringstream out;
  out << kSeriesHeader << "\n";
  for (const Sample& s : series.samples) {
    out << num(s.t_s) << ',' << num(s.position_m) << ',' << num(s.speed_mps)
        << ',' << num(s.torque_driver_nm) << ',' << num(s.command_nm) << ','
        << num(s.torque_actual_nm) << ',' << num(s.wheel_speed_fl_mps) << ','
        << num(s.wheel_speed_fr_mps) << ',' << num(s.sigma_fl) << ','
        << num(s.sigma_fr) << ',' << num(s.sigma_ref_fl) << ','
        << num(s.sigma_ref_fr) << ',' << num(s.mu_fl) << ',' << num(s.mu_fr)
        << ',' << num(s.solve_time_s) << ',' << num(s.kkt_residual) << ','
        << num(s.min_slack) << ',' << s.qp_iterations << ',' << s.solver_ok
        << "\n";
  }
  return out.str();
}

void write_series_csv(const TimeSeries& series, const std::string& path) {
  write_file(series_csv(series), path);
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "mode,tau_s,delay_s,compensation,peak_sigma_fr,rmse_sigma_fr,"
         "mean_solve_s,max_solve_s,rmse_window\n";
  for (const MetricsRow& r : rows) {
    out << r.mode << ',' << num(r.tau_s) << ',' << num(r.delay_s) << ','
        << (r.compensation ? "on" : "off") << ',' << num(r.peak_sigma_fr)
        << ',' << num(r.rmse_sigma_fr) << ',' << num(r.mean_solve_s) << ','
        << num(r.max_solve_s) << ',' << r.rmse_window << "\n";
  }
  return out.str();
}

void write_metrics_csv(const std::vector<MetricsRow>& rows,
                       const std::string& path) {
  write_file(metrics_csv(rows), path);
}

}  // namespace pretc
