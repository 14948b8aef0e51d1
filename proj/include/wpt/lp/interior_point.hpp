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

#ifndef WPT_LP_INTERIOR_POINT_HPP
#define WPT_LP_INTERIOR_POINT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "wpt/error.hpp"

namespace wpt::lp {

// Dense Mehrotra predictor-corrector method for
//
//   minimize c'x  subject to  A x >= b,  x >= 0
//
// written with a surplus s (A x - s = b, s >= 0). The dual is
//
//   maximize b'y  subject to  A'y + z = c,  y >= 0,  z >= 0
//
// and each Newton step solves the normal equations
// (A diag(x/z) A' + diag(s/y)) dy = rhs, whose order is the number of rows of A.
struct IpmOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  double step_fraction = 0.995;
};

struct IpmResult {
  Eigen::VectorXd x;  // primal variables
  Eigen::VectorXd s;  // surplus A x - b
  Eigen::VectorXd y;  // row multipliers
  Eigen::VectorXd z;  // reduced costs c - A'y
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;  // |b - A x + s|_inf / (1 + |b|_inf)
  double dual_residual = 0.0;    // |c - A'y - z|_inf / (1 + |c|_inf)
  double relative_gap = 0.0;     // |c'x - b'y| / (1 + |c'x|)
  double primal_objective = 0.0;
  double dual_objective = 0.0;
};

namespace detail {

// Largest alpha keeping v + alpha dv >= 0 (infinite when dv >= 0).
inline double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

}  // namespace detail

// Optional convergence test replacing the residual-based one: called on every
// iterate, returning true stops the run. Lets callers stop on a
// problem-specific certificate, since the generic residuals stall at the
// round-off level of the normal equations.
using IpmAcceptance = std::function<bool(const IpmResult&)>;

inline IpmResult solve_inequality_lp(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                     const Eigen::Ref<const Eigen::VectorXd>& b,
                                     const Eigen::Ref<const Eigen::VectorXd>& c,
                                     const IpmOptions& options = {},
                                     const IpmAcceptance& accept = {}) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  wpt::detail::require(m > 0 && n > 0, "LP must have at least one row and one column");
  wpt::detail::require(b.size() == m && c.size() == n, "LP dimensions are inconsistent");
  wpt::detail::require(a.allFinite() && b.allFinite() && c.allFinite(), "LP data must be finite");

  const double b_norm = b.lpNorm<Eigen::Infinity>();
  const double c_norm = c.lpNorm<Eigen::Infinity>();
  const double dim = static_cast<double>(m + n);

  IpmResult res;
  res.x = Eigen::VectorXd::Ones(n);
  res.s = (a * res.x - b).cwiseAbs().cwiseMax(1.0);
  res.y = Eigen::VectorXd::Ones(m);
  res.z = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd& x = res.x;
  Eigen::VectorXd& s = res.s;
  Eigen::VectorXd& y = res.y;
  Eigen::VectorXd& z = res.z;

  Eigen::MatrixXd scaled(m, n);
  Eigen::MatrixXd normal(m, m);
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd d(n), e(m);

  // Newton direction for the complementarity targets rxz (x o z) and rsy (s o y).
  auto direction = [&](const Eigen::VectorXd& rp, const Eigen::VectorXd& rd,
                       const Eigen::VectorXd& rxz, const Eigen::VectorXd& rsy,
                       Eigen::VectorXd& dx, Eigen::VectorXd& ds, Eigen::VectorXd& dy,
                       Eigen::VectorXd& dz) {
    const Eigen::VectorXd rhs =
        rp + a * (d.cwiseProduct(rd) - rxz.cwiseQuotient(z)) + rsy.cwiseQuotient(y);
    dy = llt.solve(rhs);
    dx = d.cwiseProduct(a.transpose() * dy - rd) + rxz.cwiseQuotient(z);
    ds = (rsy - s.cwiseProduct(dy)).cwiseQuotient(y);
    dz = (rxz - z.cwiseProduct(dx)).cwiseQuotient(x);
  };

  Eigen::VectorXd dx, ds, dy, dz, dx2, ds2, dy2, dz2;
  for (res.iterations = 0;; ++res.iterations) {
    const Eigen::VectorXd rp = b - a * x + s;
    const Eigen::VectorXd rd = c - a.transpose() * y - z;
    res.primal_objective = c.dot(x);
    res.dual_objective = b.dot(y);
    res.primal_residual = rp.lpNorm<Eigen::Infinity>() / (1.0 + b_norm);
    res.dual_residual = rd.lpNorm<Eigen::Infinity>() / (1.0 + c_norm);
    res.relative_gap =
        std::abs(res.primal_objective - res.dual_objective) / (1.0 + std::abs(res.primal_objective));
    const bool done = accept ? accept(res)
                             : res.primal_residual <= options.tolerance &&
                                   res.dual_residual <= options.tolerance &&
                                   res.relative_gap <= options.tolerance;
    if (done) {
      res.converged = true;
      break;
    }
    if (res.iterations >= options.max_iterations) break;

    const double mu = (x.dot(z) + s.dot(y)) / dim;
    if (!(mu > std::numeric_limits<double>::min())) break;
    d = x.cwiseQuotient(z);
    e = s.cwiseQuotient(y);
    scaled = a * d.cwiseSqrt().asDiagonal();
    normal.setZero();
    normal.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
    normal.diagonal() += e;
    llt.compute(normal);
    if (llt.info() != Eigen::Success) {
      // Rank loss late in the run; shift the diagonal until it factors.
      double shift = 1e-14 * std::max(1.0, normal.diagonal().maxCoeff());
      for (int attempt = 0; attempt < 8 && llt.info() != Eigen::Success; ++attempt) {
        normal.diagonal().array() += shift;
        llt.compute(normal);
        shift *= 100.0;
      }
      if (llt.info() != Eigen::Success) break;
    }

    // Predictor.
    const Eigen::VectorXd xz = x.cwiseProduct(z);
    const Eigen::VectorXd sy = s.cwiseProduct(y);
    direction(rp, rd, -xz, -sy, dx, ds, dy, dz);
    const double ap_aff = std::min({1.0, detail::max_step(x, dx), detail::max_step(s, ds)});
    const double ad_aff = std::min({1.0, detail::max_step(y, dy), detail::max_step(z, dz)});
    const double mu_aff = ((x + ap_aff * dx).dot(z + ad_aff * dz) +
                           (s + ap_aff * ds).dot(y + ad_aff * dy)) /
                          dim;
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    // Corrector.
    const Eigen::VectorXd rxz = Eigen::VectorXd::Constant(n, sigma * mu) - xz - dx.cwiseProduct(dz);
    const Eigen::VectorXd rsy = Eigen::VectorXd::Constant(m, sigma * mu) - sy - ds.cwiseProduct(dy);
    direction(rp, rd, rxz, rsy, dx2, ds2, dy2, dz2);
    const double ap =
        std::min(1.0, options.step_fraction * std::min(detail::max_step(x, dx2), detail::max_step(s, ds2)));
    const double ad =
        std::min(1.0, options.step_fraction * std::min(detail::max_step(y, dy2), detail::max_step(z, dz2)));
    if (!(ap > 0.0 && ad > 0.0) || !dx2.allFinite() || !dy2.allFinite()) break;
    x += ap * dx2;
    s += ap * ds2;
    y += ad * dy2;
    z += ad * dz2;
  }
  return res;
}

}  // namespace wpt::lp

#endif  // WPT_LP_INTERIOR_POINT_HPP
