// SPDX-License-Identifier: Apache-2.0
//
// wptopt - optimal transmit antenna deployment for indoor wireless power transfer
// Copyright (C) 2026 The wptopt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WPT_LP_SIMPLEX_HPP
#define WPT_LP_SIMPLEX_HPP

#include <vector>

#include <Eigen/Dense>

#include "wpt/error.hpp"

namespace wpt::lp {

// Dense tableau simplex with Bland's rule for
//
//   maximize c'y  subject to  A y <= b,  y >= 0,   with b >= 0,
//
// so the slack basis is feasible from the start. Meant for small master
// problems; no attempt is made to be fast.
struct SimplexResult {
  Eigen::VectorXd y;       // optimal primal point
  Eigen::VectorXd duals;   // optimal multipliers of the rows of A (>= 0)
  double value = 0.0;
  int pivots = 0;
};

inline SimplexResult simplex_max(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& c, int max_pivots = 100000,
                                 double eps = 1e-12) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  wpt::detail::require(b.size() == m && c.size() == n, "simplex dimensions are inconsistent");
  wpt::detail::require((b.array() >= 0.0).all(), "simplex needs a nonnegative right-hand side");

  // Columns: n structural, m slack, then the right-hand side. Last row holds
  // the reduced costs (z_j - c_j).
  const Eigen::Index width = n + m + 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, width);
  t.topLeftCorner(m, n) = a;
  t.block(0, n, m, m).setIdentity();
  t.col(width - 1).head(m) = b;
  t.row(m).head(n) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  SimplexResult res;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, width - 1) / t(i, enter);
        if (leave < 0 || ratio < best - eps ||
            (ratio <= best + eps && basis[static_cast<std::size_t>(i)] <
                                        basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) throw SolverError("simplex master problem is unbounded");
    if (++res.pivots > max_pivots) throw SolverError("simplex pivot limit reached");
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  res.y = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) res.y(j) = t(i, width - 1);
  }
  res.duals = t.row(m).segment(n, m).transpose().cwiseMax(0.0);
  res.value = t(m, width - 1);
  return res;
}

}  // namespace wpt::lp

#endif  // WPT_LP_SIMPLEX_HPP
