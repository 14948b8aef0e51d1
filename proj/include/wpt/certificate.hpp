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


#ifndef WPT_CERTIFICATE_HPP
#define WPT_CERTIFICATE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "wpt/channel.hpp"
#include "wpt/error.hpp"
#include "wpt/geometry.hpp"
#include "wpt/solver.hpp"

namespace wpt {

struct CertificateTolerances {
  double cert = 1e-6;  // relative, on the weighted-average gain
  double sym = 1e-6;   // absolute, on mirrored weights
};

struct OptimalityCertificate {
  double objective_m = 0.0;        // min over receivers of the received gain
  double fbar_max = 0.0;           // max over transmit positions of f_bar
  double max_fbar_excess = 0.0;    // (max f_bar - m) / m, signed
  double support_deviation = 0.0;  // max over the support of |f_bar - m| / m
  double complementarity = 0.0;    // max_r lambda_r (value_r - m) / m
  double symmetry_residual = 0.0;  // max |p(a) - p(mirror a)|; 0 without symmetric grids
  bool passed = false;
  CertificateTolerances tolerances;
};

// f_bar(t) = sum_r lambda_r f(r, t) / sum_r lambda_r.
inline Eigen::VectorXd weighted_average_gain(const Eigen::VectorXd& duals, const GainMatrix& gains) {
  detail::require(duals.size() == gains.rows(), "dual vector does not match the receiver count");
  detail::require(duals.allFinite() && (duals.array() >= 0.0).all(), "duals must be finite and nonnegative");
  const double total = duals.sum();
  detail::require(total > 0.0, "duals must not all be zero");
  return gains.entries.transpose() * duals / total;
}

// Duals for an allocation that did not come from the solver: uniform weight
// on the receivers within 1e-9 (relative) of the worst one.
inline Eigen::VectorXd induced_duals(const PowerAllocation& allocation, const GainMatrix& gains) {
  detail::require(allocation.size() == gains.cols(), "allocation does not match the transmit count");
  const Eigen::VectorXd values = gains.entries * allocation.weights;
  const double m = values.minCoeff();
  Eigen::VectorXd duals = (values.array() <= m * (1.0 + 1e-9)).cast<double>();
  return duals / duals.sum();
}

// Largest weight difference between mirrored transmit positions.
inline double symmetry_residual(const Eigen::VectorXd& weights, const LatticeGrid& grid) {
  detail::require(static_cast<std::size_t>(weights.size()) == grid.size(),
                  "weights do not match the grid");
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto w = weights(static_cast<Eigen::Index>(i));
    if (grid.mirror_x) {
      worst = std::max(worst, std::abs(w - weights(static_cast<Eigen::Index>(grid.mirror_index(i, true, false)))));
    }
    if (grid.mirror_z) {
      worst = std::max(worst, std::abs(w - weights(static_cast<Eigen::Index>(grid.mirror_index(i, false, true)))));
    }
  }
  return worst;
}

// Checks the optimality conditions of an allocation with dual weights:
// f_bar <= m on the whole transmit grid and f_bar = m on the support.
inline OptimalityCertificate verify_optimality(const PowerAllocation& allocation,
                                               const Eigen::VectorXd& duals, const GainMatrix& gains,
                                               CertificateTolerances tol = {}) {
  detail::require(allocation.size() == gains.cols(), "allocation does not match the transmit count");
  OptimalityCertificate c;
  c.tolerances = tol;
  const Eigen::VectorXd values = gains.entries * allocation.weights;
  c.objective_m = values.minCoeff();
  detail::require(c.objective_m > 0.0, "allocation reaches no receiver");
  const Eigen::VectorXd fbar = weighted_average_gain(duals, gains);
  c.fbar_max = fbar.maxCoeff();
  c.max_fbar_excess = (c.fbar_max - c.objective_m) / c.objective_m;
  for (Eigen::Index t = 0; t < allocation.size(); ++t) {
    if (allocation.weights(t) > 0.0) {
      c.support_deviation = std::max(c.support_deviation, std::abs(fbar(t) - c.objective_m) / c.objective_m);
    }
  }
  const Eigen::VectorXd lambda = duals / duals.sum();
  c.complementarity = (lambda.array() * (values.array() - c.objective_m)).maxCoeff() / c.objective_m;
  if (gains.has_grids()) c.symmetry_residual = symmetry_residual(allocation.weights, gains.tx_grid);
  c.passed = c.max_fbar_excess <= tol.cert && c.support_deviation <= tol.cert &&
             c.symmetry_residual <= tol.sym;
  return c;
}

inline OptimalityCertificate verify_optimality(const MaxMinSolution& solution, const GainMatrix& gains,
                                               CertificateTolerances tol = {}) {
  return verify_optimality(solution.allocation, solution.duals, gains, tol);
}

struct StructureReport {
  std::size_t count = 0;           // nonzero weights after thresholding
  double support_percent = 0.0;    // count relative to the number of grid cells, in percent
  double symmetry_residual = 0.0;
};

inline StructureReport check_structure(const PowerAllocation& allocation, const LatticeGrid& tx_grid,
                                       double threshold = 1e-6) {
  detail::require(static_cast<std::size_t>(allocation.size()) == tx_grid.size(),
                  "allocation does not match the grid");
  const PowerAllocation kept = extract_support(allocation, threshold);
  StructureReport r;
  r.count = kept.nonzero_count();
  r.support_percent = 100.0 * static_cast<double>(r.count) / static_cast<double>(tx_grid.size());
  r.symmetry_residual = symmetry_residual(kept.weights, tx_grid);
  return r;
}

}  // namespace wpt

#endif  // WPT_CERTIFICATE_HPP
