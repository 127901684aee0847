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

#ifndef PRETC_QP_HPP_
#define PRETC_QP_HPP_

#include <Eigen/Dense>
#include <vector>

namespace pretc {

enum class QpStatus {
  kOptimal,
  kIterationLimit,
  kNumericalFailure,
};

struct QpOptions {
  int max_iterations = 1000;
  double kkt_tolerance = 1e-8;
};

struct QpResult {
  Eigen::VectorXd z;
  Eigen::VectorXd lambda;  ///< one multiplier per inequality row (0 if inactive)
  double kkt_residual = 0.0;
  int iterations = 0;
  QpStatus status = QpStatus::kOptimal;
  std::vector<int> active_set;
};

/// Solves min 1/2 z'Hz + g'z subject to C z >= d with a primal active-set
/// method (range-space form, Cholesky of the scaled Hessian kept across
/// iterations). H must be symmetric positive definite and z0 feasible.
/// initial_active optionally seeds the working set with rows that hold with
/// equality at z0; dependent or inactive seeds are ignored.
QpResult solve_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                  const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                  const Eigen::VectorXd& z0, const QpOptions& opts = {},
                  const std::vector<int>* initial_active = nullptr);

/// Max-norm KKT residual of (z, lambda): stationarity, primal feasibility
/// violation and complementarity, in the original (unscaled) units.
double qp_kkt_residual(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                       const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                       const Eigen::VectorXd& z, const Eigen::VectorXd& lambda);

}  // namespace pretc

#endif  // PRETC_QP_HPP_
