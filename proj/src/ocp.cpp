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

#include "pretc/ocp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pretc/tire.hpp"

namespace pretc {

void Weights::validate() const {
  const double vals[] = {slack_fl, slack_fr, torque, eint_fl, eint_fr};
  for (double v : vals) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("weights must be nonnegative and finite");
    }
  }
  if (slack_fl < 1e3 * torque || slack_fr < 1e3 * torque) {
    throw std::invalid_argument(
        "slack weights must dominate the torque weight by at least 1e3");
  }
}

void OcpProblem::validate() const {
  if (n_steps < 1) throw std::invalid_argument("ocp: n_steps must be >= 1");
  if (stages.size() != static_cast<std::size_t>(n_steps) + 1) {
    throw std::invalid_argument("ocp: need n_steps + 1 stage parameter sets");
  }
  if (!(ts_s > 0.0)) throw std::invalid_argument("ocp: ts must be positive");
  weights.validate();
  vehicle.validate();
  tire.validate();
  for (double v : x_in.to_array()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("ocp: non-finite initial state");
    }
  }
  const double t_driver = stages.front().torque_driver_nm;
  if (!(t_driver >= 0.0) || !std::isfinite(t_driver)) {
    throw std::invalid_argument("ocp: driver torque must be >= 0");
  }
  for (const StageParams& s : stages) {
    if (!(s.mu_fl > 0.0 && s.mu_fl <= 1.2 && s.mu_fr > 0.0 && s.mu_fr <= 1.2)) {
      throw std::invalid_argument("ocp: stage mu must lie in (0, 1.2]");
    }
    if (!(s.sigma_ref_fl > 0.0 && s.sigma_ref_fl < 1.0 &&
          s.sigma_ref_fr > 0.0 && s.sigma_ref_fr < 1.0)) {
      throw std::invalid_argument("ocp: stage sigma_ref must lie in (0, 1)");
    }
    if (s.torque_driver_nm != t_driver) {
      throw std::invalid_argument(
          "ocp: driver torque must be constant along the horizon");
    }
  }
}

double stage_cost(const InternalState& x, const ControlInput& u,
                  double torque_driver_nm, const Weights& w) {
  const double dt = torque_driver_nm - u.torque_mod_nm;
  return w.slack_fl * u.slack_fl * u.slack_fl +
         w.slack_fr * u.slack_fr * u.slack_fr + w.torque * dt * dt +
         w.eint_fl * x.eint_fl * x.eint_fl + w.eint_fr * x.eint_fr * x.eint_fr;
}

StageLinearization discretize_and_linearize(const InternalState& x,
                                            const ControlInput& u,
                                            const VehicleParams& p,
                                            const TireParams& tire,
                                            const StageParams& stage,
                                            double ts_s, double substep_s) {
  StageLinearization out;
  out.f = integrate_step(x, u, p, tire, stage, ts_s, substep_s);
  const auto f0 = out.f.to_array();
  for (double v : f0) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("ocp: stage integration produced non-finite state");
    }
  }
  const auto xa = x.to_array();
  for (std::size_t i = 0; i < InternalState::kSize; ++i) {
    const double h = std::max(1e-6, 1e-6 * std::abs(xa[i]));
    auto xp = xa;
    xp[i] += h;
    const auto fp = integrate_step(InternalState::from_array(xp), u, p, tire,
                                   stage, ts_s, substep_s)
                        .to_array();
    for (std::size_t r = 0; r < InternalState::kSize; ++r) {
      out.a(static_cast<int>(r), static_cast<int>(i)) = (fp[r] - f0[r]) / h;
    }
  }
  const auto ua = u.to_array();
  for (std::size_t i = 0; i < ControlInput::kSize; ++i) {
    const double h = std::max(1e-6, 1e-6 * std::abs(ua[i]));
    auto up = ua;
    up[i] += h;
    const auto fp = integrate_step(x, ControlInput::from_array(up), p, tire,
                                   stage, ts_s, substep_s)
                        .to_array();
    for (std::size_t r = 0; r < InternalState::kSize; ++r) {
      out.b(static_cast<int>(r), static_cast<int>(i)) = (fp[r] - f0[r]) / h;
    }
  }
  return out;
}

namespace {

struct SigmaLin {
  double value = 0.0;
  double d_omega = 0.0;
  double d_slip = 0.0;
};

SigmaLin sigma_linearization(double omega, double slip_speed,
                             const VehicleParams& p) {
  SigmaLin out;
  const double tangential = omega * p.wheel_radius_m;
  const double den = std::max(tangential, p.slip_speed_eps);
  out.value = slip_speed / den;
  out.d_slip = 1.0 / den;
  out.d_omega = tangential > p.slip_speed_eps
                    ? -slip_speed * p.wheel_radius_m / (den * den)
                    : 0.0;
  return out;
}

}  // namespace

OcpSolution rti_step(const OcpProblem& problem, const OcpSolution* warm,
                     const RtiOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();
  problem.validate();

  const int n = problem.n_steps;
  const int nx = static_cast<int>(InternalState::kSize);
  const int nu = static_cast<int>(ControlInput::kSize);
  const int nz = nu * n;
  const double t_driver = problem.torque_driver();

  // Warm-start controls, clamped into the feasible box.
  std::vector<ControlInput> u_bar(static_cast<std::size_t>(n));
  if (warm != nullptr && warm->controls.size() == static_cast<std::size_t>(n)) {
    u_bar = warm->controls;
  } else {
    for (auto& u : u_bar) u.torque_mod_nm = t_driver;
  }
  for (auto& u : u_bar) {
    u.torque_mod_nm = std::clamp(u.torque_mod_nm, 0.0, t_driver);
    u.slack_fl = std::max(u.slack_fl, 0.0);
    u.slack_fr = std::max(u.slack_fr, 0.0);
  }

  // Forward simulation of the shooting nodes and stage linearization.
  std::vector<InternalState> x_bar(static_cast<std::size_t>(n) + 1);
  std::vector<StageLinearization> lin(static_cast<std::size_t>(n));
  x_bar[0] = problem.x_in;
  for (int k = 0; k < n; ++k) {
    lin[static_cast<std::size_t>(k)] = discretize_and_linearize(
        x_bar[static_cast<std::size_t>(k)], u_bar[static_cast<std::size_t>(k)],
        problem.vehicle, problem.tire, problem.stages[static_cast<std::size_t>(k)],
        problem.ts_s, problem.substep_s);
    x_bar[static_cast<std::size_t>(k) + 1] = lin[static_cast<std::size_t>(k)].f;
  }

  // Sensitivities of the shooting nodes w.r.t. the stacked control increment.
  std::vector<Eigen::MatrixXd> sens(static_cast<std::size_t>(n) + 1);
  sens[0] = Eigen::MatrixXd::Zero(nx, nz);
  for (int k = 0; k < n; ++k) {
    sens[static_cast<std::size_t>(k) + 1] =
        lin[static_cast<std::size_t>(k)].a * sens[static_cast<std::size_t>(k)];
    sens[static_cast<std::size_t>(k) + 1].middleCols(nu * k, nu) +=
        lin[static_cast<std::size_t>(k)].b;
  }

  // Condensed cost.
  Eigen::MatrixXd h_mat =
      2.0 * opts.lm_damping * Eigen::MatrixXd::Identity(nz, nz);
  Eigen::VectorXd g_vec = Eigen::VectorXd::Zero(nz);
  const Weights& w = problem.weights;
  for (int k = 0; k < n; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const int it = nu * k;
    h_mat(it, it) += 2.0 * w.torque;
    g_vec(it) += 2.0 * w.torque * (u_bar[ks].torque_mod_nm - t_driver);
    h_mat(it + 1, it + 1) += 2.0 * w.slack_fl;
    g_vec(it + 1) += 2.0 * w.slack_fl * u_bar[ks].slack_fl;
    h_mat(it + 2, it + 2) += 2.0 * w.slack_fr;
    g_vec(it + 2) += 2.0 * w.slack_fr * u_bar[ks].slack_fr;
    const double w_eint[2] = {w.eint_fl, w.eint_fr};
    const double eint_bar[2] = {x_bar[ks].eint_fl, x_bar[ks].eint_fr};
    for (int j = 0; j < 2; ++j) {
      const Eigen::RowVectorXd row = sens[ks].row(kIdxEintFL + j);
      h_mat.noalias() += 2.0 * w_eint[j] * row.transpose() * row;
      g_vec.noalias() += 2.0 * w_eint[j] * eint_bar[j] * row.transpose();
    }
  }

  // Constraint rows: per stage the torque box, slack nonnegativity and the
  // linearized soft slip constraints, then any finite state bounds.
  std::vector<Eigen::RowVectorXd> c_rows;
  std::vector<double> d_vals;
  c_rows.reserve(static_cast<std::size_t>(6 * n));
  d_vals.reserve(static_cast<std::size_t>(6 * n));
  std::vector<int> seed;

  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(nz);
  for (int k = 0; k < n; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const int it = nu * k;
    const double t_bar = u_bar[ks].torque_mod_nm;

    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nz);
    row(it) = 1.0;  // torque lower bound
    c_rows.push_back(row);
    d_vals.push_back(-t_bar);
    if (t_bar <= 1e-12) seed.push_back(static_cast<int>(c_rows.size()) - 1);

    row.setZero();
    row(it) = -1.0;  // torque upper bound
    c_rows.push_back(row);
    d_vals.push_back(t_bar - t_driver);
    if (t_bar >= t_driver - 1e-12) {
      seed.push_back(static_cast<int>(c_rows.size()) - 1);
    }

    const double slack_bar[2] = {u_bar[ks].slack_fl, u_bar[ks].slack_fr};
    const SigmaLin sig[2] = {
        sigma_linearization(x_bar[ks].omega_fl, x_bar[ks].slip_speed_fl,
                            problem.vehicle),
        sigma_linearization(x_bar[ks].omega_fr, x_bar[ks].slip_speed_fr,
                            problem.vehicle)};
    const double sigma_ref[2] = {problem.stages[ks].sigma_ref_fl,
                                 problem.stages[ks].sigma_ref_fr};

    // Slack nonnegativity, with the feasibility restoration for z0 baked in:
    // lift the slack increment so the (linearized) soft constraint holds.
    double lift[2];
    for (int j = 0; j < 2; ++j) {
      const double err = sigma_ref[j] - sig[j].value;
      lift[j] = std::max(0.0, -(err + slack_bar[j]));
      z0(it + 1 + j) = lift[j];

      row.setZero();
      row(it + 1 + j) = 1.0;
      c_rows.push_back(row);
      d_vals.push_back(-slack_bar[j]);
      if (lift[j] == 0.0 && slack_bar[j] <= 1e-12) {
        seed.push_back(static_cast<int>(c_rows.size()) - 1);
      }
    }
    for (int j = 0; j < 2; ++j) {
      const double err = sigma_ref[j] - sig[j].value;
      row = -(sig[j].d_omega * sens[ks].row(kIdxOmegaFL + j) +
              sig[j].d_slip * sens[ks].row(kIdxSlipFL + j));
      row(it + 1 + j) += 1.0;
      c_rows.push_back(row);
      d_vals.push_back(-(err + slack_bar[j]));
      if (lift[j] > 0.0) seed.push_back(static_cast<int>(c_rows.size()) - 1);
    }
  }
  // Finite state bounds on the predicted nodes (the initial node is fixed).
  for (int k = 1; k <= n; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const auto xa = x_bar[ks].to_array();
    for (int i = 0; i < nx; ++i) {
      const auto is = static_cast<std::size_t>(i);
      if (std::isfinite(problem.x_lower[is])) {
        c_rows.emplace_back(sens[ks].row(i));
        d_vals.push_back(problem.x_lower[is] - xa[is]);
      }
      if (std::isfinite(problem.x_upper[is])) {
        c_rows.emplace_back(-sens[ks].row(i));
        d_vals.push_back(xa[is] - problem.x_upper[is]);
      }
    }
  }

  const int m_rows = static_cast<int>(c_rows.size());
  Eigen::MatrixXd c_mat(m_rows, nz);
  Eigen::VectorXd d_vec(m_rows);
  for (int i = 0; i < m_rows; ++i) {
    c_mat.row(i) = c_rows[static_cast<std::size_t>(i)];
    d_vec(i) = d_vals[static_cast<std::size_t>(i)];
  }

  // The slack lift keeps every soft row feasible at z0; only externally
  // imposed state bounds can make the start point infeasible.
  {
    const Eigen::VectorXd residual = c_mat * z0 - d_vec;
    if (residual.minCoeff() < -1e-9) {
      throw std::runtime_error(
          "ocp: infeasible start point (state bounds violated along the "
          "linearized trajectory)");
    }
  }

  QpOptions qp_opts = opts.qp;
  const QpResult qp = solve_qp(h_mat, g_vec, c_mat, d_vec, z0, qp_opts, &seed);
  if (qp.status == QpStatus::kNumericalFailure) {
    throw std::runtime_error("ocp: qp solve failed numerically");
  }

  OcpSolution sol;
  sol.controls.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const int it = nu * k;
    ControlInput u = u_bar[ks];
    u.torque_mod_nm =
        std::clamp(u.torque_mod_nm + qp.z(it), 0.0, t_driver);
    u.slack_fl = std::max(0.0, u.slack_fl + qp.z(it + 1));
    u.slack_fr = std::max(0.0, u.slack_fr + qp.z(it + 2));
    sol.controls[ks] = u;
  }
  // Re-simulate so the returned trajectory satisfies the discrete dynamics.
  sol.states.resize(static_cast<std::size_t>(n) + 1);
  sol.states[0] = problem.x_in;
  for (int k = 0; k < n; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    sol.states[ks + 1] =
        integrate_step(sol.states[ks], sol.controls[ks], problem.vehicle,
                       problem.tire, problem.stages[ks], problem.ts_s,
                       problem.substep_s);
    for (double v : sol.states[ks + 1].to_array()) {
      if (!std::isfinite(v)) {
        throw std::runtime_error(
            "ocp: non-finite state in the expanded trajectory at stage " +
            std::to_string(k));
      }
    }
  }
  sol.kkt_residual = qp.kkt_residual;
  sol.qp_iterations = qp.iterations;
  sol.status = qp.status == QpStatus::kOptimal ? SolveStatus::kOk
                                               : SolveStatus::kIterationLimit;
  sol.solve_time_s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  return sol;
}

}  // namespace pretc
