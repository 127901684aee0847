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

#include "pretc/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pretc {

namespace {

// Working-set bookkeeping for the range-space iteration. Maintains
// M = Hs^{-1} Cs_W' column by column and the upper Cholesky factor R of
// S = Cs_W M, extended on constraint addition and rebuilt on removal.
class WorkingSet {
 public:
  WorkingSet(const Eigen::LLT<Eigen::MatrixXd>& hs_llt,
             const Eigen::MatrixXd& cs)
      : hs_llt_(hs_llt), cs_(cs) {}

  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& rows() const { return rows_; }
  bool contains(int row) const {
    return std::find(rows_.begin(), rows_.end(), row) != rows_.end();
  }

  // Returns false when the candidate row is (numerically) linearly dependent
  // on the current working set; the set is left unchanged in that case.
  bool add(int row) {
    const int m = size();
    const Eigen::VectorXd c = cs_.row(row).transpose();
    const Eigen::VectorXd v = hs_llt_.solve(c);
    const double diag = c.dot(v);
    Eigen::VectorXd w;
    if (m > 0) {
      Eigen::VectorXd s_col(m);
      for (int k = 0; k < m; ++k) {
        s_col(k) = cs_.row(rows_[k]).dot(v.transpose());
      }
      w = r_.topLeftCorner(m, m)
              .transpose()
              .triangularView<Eigen::Lower>()
              .solve(s_col);
    }
    const double rho2 = diag - (m > 0 ? w.squaredNorm() : 0.0);
    if (!(rho2 > 1e-12 * std::max(diag, 1e-30))) {
      return false;
    }
    grow(m + 1);
    m_.col(m) = v;
    if (m > 0) r_.col(m).head(m) = w;
    r_(m, m) = std::sqrt(rho2);
    rows_.push_back(row);
    return true;
  }

  void remove(int pos) {
    rows_.erase(rows_.begin() + pos);
    const int m = size();
    for (int k = pos; k < m; ++k) {
      m_.col(k) = m_.col(k + 1);
    }
    if (m == 0) return;
    // Rebuild the Cholesky factor of the shrunken S.
    Eigen::MatrixXd s(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        s(i, j) = cs_.row(rows_[i]).dot(m_.col(j).transpose());
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("qp: working-set factorization lost rank");
    }
    r_.topLeftCorner(m, m) = llt.matrixU();
  }

  // Solves S x = rhs via the maintained Cholesky factor.
  Eigen::VectorXd solve_s(const Eigen::VectorXd& rhs) const {
    const int m = size();
    const Eigen::VectorXd y = r_.topLeftCorner(m, m)
                                  .transpose()
                                  .triangularView<Eigen::Lower>()
                                  .solve(rhs);
    return r_.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(y);
  }

  const Eigen::MatrixXd& m_cols() const { return m_; }

 private:
  void grow(int m) {
    if (m_.cols() >= m) return;
    const int cap = std::max(2 * m, 16);
    Eigen::MatrixXd new_m(cs_.cols(), cap);
    Eigen::MatrixXd new_r = Eigen::MatrixXd::Zero(cap, cap);
    if (size() > 0) {
      new_m.leftCols(size()) = m_.leftCols(size());
      new_r.topLeftCorner(size(), size()) = r_.topLeftCorner(size(), size());
    }
    m_.swap(new_m);
    r_.swap(new_r);
  }

  const Eigen::LLT<Eigen::MatrixXd>& hs_llt_;
  const Eigen::MatrixXd& cs_;
  std::vector<int> rows_;
  Eigen::MatrixXd m_;  // n x capacity, first size() columns valid
  Eigen::MatrixXd r_;  // upper Cholesky factor of S, top-left size() block
};

}  // namespace

double qp_kkt_residual(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                       const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                       const Eigen::VectorXd& z,
                       const Eigen::VectorXd& lambda) {
  double res = (H * z + g - C.transpose() * lambda).cwiseAbs().maxCoeff();
  if (C.rows() > 0) {
    const Eigen::VectorXd slack = C * z - d;
    res = std::max(res, std::max(0.0, (-slack).maxCoeff()));
    res = std::max(res, lambda.cwiseProduct(slack).cwiseAbs().maxCoeff());
    if (lambda.minCoeff() < 0.0) res = std::max(res, -lambda.minCoeff());
  }
  return res;
}

QpResult solve_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                  const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                  const Eigen::VectorXd& z0, const QpOptions& opts,
                  const std::vector<int>* initial_active) {
  const int n = static_cast<int>(H.rows());
  const int m_rows = static_cast<int>(C.rows());

  // Diagonal variable scaling to unit Hessian diagonal, plus unit row norms
  // on the constraints; keeps the factorizations well conditioned across the
  // wide weight range of the cost.
  Eigen::VectorXd dscale(n);
  for (int i = 0; i < n; ++i) {
    const double hii = H(i, i);
    dscale(i) = hii > 0.0 ? 1.0 / std::sqrt(hii) : 1.0;
  }
  Eigen::MatrixXd hs = dscale.asDiagonal() * H * dscale.asDiagonal();
  const Eigen::VectorXd gs = dscale.asDiagonal() * g;

  Eigen::MatrixXd cs(m_rows, n);
  Eigen::VectorXd ds(m_rows);
  Eigen::VectorXd rscale(m_rows);
  for (int i = 0; i < m_rows; ++i) {
    const Eigen::RowVectorXd row = C.row(i) * dscale.asDiagonal();
    const double norm = row.norm();
    rscale(i) = norm > 0.0 ? 1.0 / norm : 1.0;
    cs.row(i) = row * rscale(i);
    ds(i) = d(i) * rscale(i);
  }

  Eigen::LLT<Eigen::MatrixXd> hs_llt(hs);
  double shift = 0.0;
  while (hs_llt.info() != Eigen::Success && shift < 1e-6) {
    shift = shift == 0.0 ? 1e-12 : shift * 100.0;
    hs_llt.compute(hs + shift * Eigen::MatrixXd::Identity(n, n));
  }
  QpResult result;
  if (hs_llt.info() != Eigen::Success) {
    result.status = QpStatus::kNumericalFailure;
    result.z = z0;
    result.lambda = Eigen::VectorXd::Zero(m_rows);
    result.kkt_residual = std::numeric_limits<double>::infinity();
    return result;
  }

  Eigen::VectorXd z = z0.cwiseQuotient(dscale);  // scaled iterate
  WorkingSet ws(hs_llt, cs);
  if (initial_active != nullptr) {
    for (int row : *initial_active) {
      if (row < 0 || row >= m_rows) continue;
      // Seed only rows that hold with (near) equality at z0.
      if (std::abs(cs.row(row).dot(z.transpose()) - ds(row)) <= 1e-10) {
        ws.add(row);
      }
    }
  }

  const double tol_step = 1e-11;
  const double tol_lambda = 1e-10 * (1.0 + gs.cwiseAbs().maxCoeff());
  QpStatus status = QpStatus::kIterationLimit;
  Eigen::VectorXd lam_w;

  auto solve_eqp = [&](Eigen::VectorXd* lam, Eigen::VectorXd* p) {
    const int m = ws.size();
    const Eigen::VectorXd grad = hs * z + gs;
    const Eigen::VectorXd y = hs_llt.solve(grad);
    if (m > 0) {
      Eigen::VectorXd rhs(m);
      for (int k = 0; k < m; ++k) {
        const int row = ws.rows()[k];
        rhs(k) =
            cs.row(row).dot(y.transpose()) + (ds(row) - cs.row(row).dot(z.transpose()));
      }
      *lam = ws.solve_s(rhs);
      *p = -y + ws.m_cols().leftCols(m) * (*lam);
    } else {
      lam->resize(0);
      *p = -y;
    }
  };

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    Eigen::VectorXd p;
    solve_eqp(&lam_w, &p);

    if (p.cwiseAbs().maxCoeff() <= tol_step * (1.0 + z.cwiseAbs().maxCoeff())) {
      // Stationary on the working set: check multiplier signs.
      int drop = -1;
      double most_negative = -tol_lambda;
      for (int k = 0; k < ws.size(); ++k) {
        if (lam_w(k) < most_negative) {
          most_negative = lam_w(k);
          drop = k;
        }
      }
      if (drop < 0) {
        status = QpStatus::kOptimal;
        break;
      }
      ws.remove(drop);
      continue;
    }

    // Ratio test against rows outside the working set.
    double alpha = 1.0;
    int blocking = -1;
    for (int i = 0; i < m_rows; ++i) {
      if (ws.contains(i)) continue;
      const double dir = cs.row(i).dot(p.transpose());
      if (dir >= -1e-13) continue;
      const double slack = cs.row(i).dot(z.transpose()) - ds(i);
      const double a = std::max(0.0, slack) / (-dir);
      if (a < alpha - 1e-15) {
        alpha = a;
        blocking = i;
      }
    }
    z += alpha * p;
    if (blocking >= 0) {
      ws.add(blocking);  // dependent rows are skipped inside
    }
  }
  if (status != QpStatus::kOptimal) {
    status = QpStatus::kIterationLimit;
  }
  // Multipliers consistent with the final working set.
  {
    Eigen::VectorXd p_unused;
    solve_eqp(&lam_w, &p_unused);
  }

  auto expand_unscale = [&](const Eigen::VectorXd& zs,
                            const Eigen::VectorXd& lw, Eigen::VectorXd* zu,
                            Eigen::VectorXd* lu) {
    Eigen::VectorXd lambda_s = Eigen::VectorXd::Zero(m_rows);
    for (int k = 0; k < ws.size(); ++k) lambda_s(ws.rows()[k]) = lw(k);
    *zu = dscale.asDiagonal() * zs;
    *lu = rscale.asDiagonal() * lambda_s;
  };

  // Iterative refinement of the KKT system on the final working set; keep
  // the best iterate seen.
  Eigen::VectorXd best_z, best_lam;
  expand_unscale(z, lam_w, &best_z, &best_lam);
  double best_kkt = qp_kkt_residual(H, g, C, d, best_z, best_lam);
  const int m = ws.size();
  for (int pass = 0; pass < 3 && best_kkt > opts.kkt_tolerance * 1e-2; ++pass) {
    Eigen::VectorXd r1 = -gs - hs * z;
    for (int k = 0; k < m; ++k) {
      r1 += cs.row(ws.rows()[k]).transpose() * lam_w(k);
    }
    Eigen::VectorXd dz;
    if (m > 0) {
      Eigen::VectorXd r2(m);
      for (int k = 0; k < m; ++k) {
        r2(k) = ds(ws.rows()[k]) - cs.row(ws.rows()[k]).dot(z.transpose());
      }
      const Eigen::VectorXd hr1 = hs_llt.solve(r1);
      Eigen::VectorXd cr(m);
      for (int k = 0; k < m; ++k) {
        cr(k) = cs.row(ws.rows()[k]).dot(hr1.transpose());
      }
      const Eigen::VectorXd dlam = ws.solve_s(r2 - cr);
      dz = hr1 + ws.m_cols().leftCols(m) * dlam;
      lam_w += dlam;
    } else {
      dz = hs_llt.solve(r1);
    }
    z += dz;
    Eigen::VectorXd z_u, lam_u;
    expand_unscale(z, lam_w, &z_u, &lam_u);
    const double kkt = qp_kkt_residual(H, g, C, d, z_u, lam_u);
    if (kkt < best_kkt) {
      best_kkt = kkt;
      best_z = z_u;
      best_lam = lam_u;
    } else {
      break;
    }
  }

  result.z = best_z;
  result.lambda = best_lam;
  result.kkt_residual = best_kkt;
  result.iterations = iter;
  result.status = status;
  result.active_set = ws.rows();
  return result;
}

}  // namespace pretc
