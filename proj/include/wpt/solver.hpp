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

#ifndef WPT_SOLVER_HPP
#define WPT_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "wpt/channel.hpp"
#include "wpt/error.hpp"
#include "wpt/lp/interior_point.hpp"
#include "wpt/lp/simplex.hpp"

namespace wpt {

// Nonnegative transmit power weights summing to one.
struct PowerAllocation {
  Eigen::VectorXd weights;
  std::vector<Eigen::Index> support;  // indices with weight > 0
  double threshold_applied = 0.0;
  double removed_mass = 0.0;

  std::size_t nonzero_count() const { return support.size(); }
  Eigen::Index size() const { return weights.size(); }

  // Normalizes `weights` to unit sum and records the support.
  static PowerAllocation from_weights(Eigen::VectorXd weights) {
    detail::require(weights.size() > 0, "allocation must be nonempty");
    detail::require(weights.allFinite() && (weights.array() >= 0.0).all(),
                    "allocation weights must be finite and nonnegative");
    const double total = weights.sum();
    detail::require(total > 0.0, "allocation must carry positive power");
    PowerAllocation a;
    a.weights = weights / total;
    for (Eigen::Index i = 0; i < a.weights.size(); ++i) {
      if (a.weights(i) > 0.0) a.support.push_back(i);
    }
    return a;
  }
};

// Zeroes weights below `threshold` and renormalizes the rest.
inline PowerAllocation extract_support(const PowerAllocation& allocation, double threshold = 1e-6) {
  detail::require(threshold >= 0.0, "threshold must be nonnegative");
  Eigen::VectorXd w = allocation.weights;
  double removed = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < threshold) {
      removed += w(i);
      w(i) = 0.0;
    }
  }
  if (!(w.sum() > 0.0)) throw InvalidArgument("every weight lies below the support threshold");
  PowerAllocation out = PowerAllocation::from_weights(std::move(w));
  out.threshold_applied = threshold;
  out.removed_mass = allocation.removed_mass + removed;
  return out;
}

enum class RowGeneration { automatic, always, never };

struct SolveOptions {
  double tol = 1e-9;                  // relative duality gap of the returned solution
  double support_threshold = 1e-6;    // weights below are zeroed; 0 disables
  bool symmetrize = true;             // exploit the mirror group when grids allow
  bool reduce_symmetric = true;       // with symmetrize: solve over mirror orbits
  RowGeneration row_generation = RowGeneration::automatic;
  Eigen::Index row_generation_threshold = 400;  // `automatic` switches on above this many rows
  Eigen::Index rows_per_round = 64;
  int max_rounds = 200;
  int max_ipm_iterations = 200;
};

struct SolverStats {
  int ipm_iterations = 0;
  int rounds = 0;
  Eigen::Index working_rows = 0;
  double primal_residual = 0.0;  // of the last master problem
  double dual_residual = 0.0;
  double duality_gap = 0.0;      // (max f_bar - m) / m
  double complementarity = 0.0;  // max_r lambda_r (value_r - m) / m
  bool reduced = false;
};

struct MaxMinSolution {
  PowerAllocation allocation;
  double objective_m = 0.0;   // min over receivers of the received (normalized) gain
  double dual_bound = 0.0;    // max over transmit positions of the dual-weighted gain
  Eigen::VectorXd duals;      // receiver weights, unit sum
  SolverStats stats;
};

namespace detail {

inline void validate_gains(const Eigen::MatrixXd& g) {
  require(g.rows() > 0 && g.cols() > 0, "gain matrix must be nonempty");
  require(g.allFinite(), "gains must be finite");
  require((g.array() >= 0.0).all(), "gains must be nonnegative");
  require((g.rowwise().maxCoeff().array() > 0.0).all(),
          "every receiver needs a positive gain from some transmit position");
}

// Indices 0..n-1 ordered by ascending value, ties by index.
inline std::vector<Eigen::Index> ascending_order(const Eigen::VectorXd& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
  return order;
}

struct MasterResult {
  Eigen::VectorXd x;  // transmit variables of  min 1'x s.t. G x >= 1
  Eigen::VectorXd y;  // receiver multipliers
  lp::IpmResult ipm;
  double gap = 0.0;   // certified max-min gap of (x, y) on the master rows
};

// Solves min 1'x s.t. sub x >= 1, x >= 0 through whichever of the primal or
// dual inequality forms has the smaller normal matrix. Stops as soon as the
// normalized iterate certifies the max-min optimum of `sub` to `gap_tol`.
inline MasterResult solve_master(const Eigen::MatrixXd& sub, const lp::IpmOptions& options,
                                 double gap_tol, bool allow_restriction = true) {
  MasterResult out;
  const Eigen::Index rows = sub.rows();
  const Eigen::Index cols = sub.cols();
  const bool primal_form = rows <= cols;
  // Tracks the best certified iterate; late iterations can lose accuracy once
  // the normal equations become ill-conditioned.
  double best_gap = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x, best_y;
  // The iterate is also scored after purification (entries below 1e-9 of the
  // largest zeroed), which removes the mu / z mass spread over columns that
  // are not in the optimal support.
  auto certified = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd lambda = y.cwiseMax(0.0);
    const double ls = lambda.sum();
    if (!(ls > 0.0)) return false;
    const double bound = (sub.transpose() * lambda).maxCoeff() / ls;
    const Eigen::VectorXd p = x.cwiseMax(0.0);
    const double cutoff = 1e-9 * p.maxCoeff();
    const Eigen::VectorXd purified = (p.array() < cutoff).select(0.0, p);
    bool improved = false;
    for (const Eigen::VectorXd* cand : {&p, &purified}) {
      const double ps = cand->sum();
      if (!(ps > 0.0)) continue;
      const double m = (sub * *cand).minCoeff() / ps;
      if (!(m > 0.0)) continue;
      const double gap = (bound - m) / m;
      if (gap < best_gap) {
        best_gap = gap;
        best_x = *cand;
        improved = true;
      }
    }
    if (improved) best_y = lambda;
    return best_gap <= gap_tol;
  };
  // Crossover: once the iterate identifies the support columns and the
  // active rows, the optimal vertex solves the small systems G_RS x = 1 and
  // G_RS' y = 1 exactly, which sidesteps the conditioning of the late
  // normal equations.
  auto crossover = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double xmax = x.maxCoeff();
    const double ymax = y.maxCoeff();
    if (!(xmax > 0.0) || !(ymax > 0.0)) return false;
    std::vector<Eigen::Index> support, active;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (x(j) > 1e-6 * xmax) support.push_back(j);
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (y(i) > 1e-6 * ymax) active.push_back(i);
    }
    const Eigen::MatrixXd block = sub(active, support);
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(block);
    const Eigen::VectorXd xs = cod.solve(Eigen::VectorXd::Ones(block.rows()));
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codt(block.transpose());
    const Eigen::VectorXd yr = codt.solve(Eigen::VectorXd::Ones(block.cols()));
    if (!xs.allFinite() || !yr.allFinite()) return false;
    Eigen::VectorXd xf = Eigen::VectorXd::Zero(cols);
    Eigen::VectorXd yf = Eigen::VectorXd::Zero(rows);
    for (std::size_t k = 0; k < support.size(); ++k) xf(support[k]) = xs(static_cast<Eigen::Index>(k));
    for (std::size_t k = 0; k < active.size(); ++k) yf(active[k]) = yr(static_cast<Eigen::Index>(k));
    return certified(xf, yf);
  };
  auto accept = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (certified(x, y)) return true;
    return best_gap < 1e-3 && crossover(x, y);
  };
  if (primal_form) {
    out.ipm = lp::solve_inequality_lp(
        sub, Eigen::VectorXd::Ones(rows), Eigen::VectorXd::Ones(cols), options,
        [&](const lp::IpmResult& it) { return accept(it.x, it.y); });
  } else {
    const Eigen::MatrixXd neg_t = -sub.transpose();
    out.ipm = lp::solve_inequality_lp(
        neg_t, -Eigen::VectorXd::Ones(cols), -Eigen::VectorXd::Ones(rows), options,
        [&](const lp::IpmResult& it) { return accept(it.y, it.x); });
  }
  if (best_x.size() == 0) {
    out.x = primal_form ? out.ipm.x : out.ipm.y;
    out.y = primal_form ? out.ipm.y : out.ipm.x;
  } else {
    out.x = std::move(best_x);
    out.y = std::move(best_y);
  }
  out.gap = best_gap;
  if (best_gap > gap_tol && allow_restriction && out.y.size() > 0) {
    // Stalled on the full column set: re-solve on the columns that can carry
    // power at the optimum (near-maximal weighted gain or non-negligible
    // weight) and certify the padded result against every column.
    const Eigen::VectorXd scores = sub.transpose() * out.y;
    const double top = scores.maxCoeff();
    const double heaviest = out.x.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (scores(j) >= 0.99 * top || out.x(j) > 1e-8 * heaviest) keep.push_back(j);
    }
    if (static_cast<Eigen::Index>(keep.size()) < cols) {
      const Eigen::MatrixXd narrowed = sub(Eigen::all, keep);
      const MasterResult inner = solve_master(narrowed, options, gap_tol, false);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
      for (std::size_t k = 0; k < keep.size(); ++k) x(keep[k]) = inner.x(static_cast<Eigen::Index>(k));
      best_gap = std::numeric_limits<double>::infinity();
      best_x.resize(0);
      if (certified(x, inner.y) || best_gap < out.gap) {
        out.x = std::move(best_x);
        out.y = std::move(best_y);
        out.gap = best_gap;
        out.ipm.iterations += inner.ipm.iterations;
      }
    }
  }
  return out;
}

struct CoreResult {
  Eigen::VectorXd weights;
  Eigen::VectorXd duals;
  SolverStats stats;
};

// Max-min allocation of a dense gain matrix. With row generation the
// interior-point method runs on a growing working set of receivers until the
// allocation is optimal for every receiver.
inline CoreResult solve_core(const Eigen::MatrixXd& g, const SolveOptions& opt) {
  validate_gains(g);
  require(opt.tol > 0.0, "tolerance must be positive");
  const Eigen::Index nr = g.rows();
  const bool generate = opt.row_generation == RowGeneration::always ||
                        (opt.row_generation == RowGeneration::automatic &&
                         nr > opt.row_generation_threshold);

  std::vector<Eigen::Index> working;
  std::vector<char> in_working(static_cast<std::size_t>(nr), 0);
  if (!generate) {
    working.resize(static_cast<std::size_t>(nr));
    std::iota(working.begin(), working.end(), Eigen::Index{0});
  } else {
    const auto order = ascending_order(g.rowwise().mean());
    const auto count = static_cast<std::size_t>(std::min(nr, std::max<Eigen::Index>(1, opt.rows_per_round)));
    working.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
  }
  for (auto r : working) in_working[static_cast<std::size_t>(r)] = 1;

  lp::IpmOptions ipm_options;
  ipm_options.tolerance = 0.01 * opt.tol;
  ipm_options.max_iterations = opt.max_ipm_iterations;

  CoreResult out;
  Eigen::VectorXd lambda_w;
  for (;;) {
    ++out.stats.rounds;
    std::sort(working.begin(), working.end());
    const Eigen::MatrixXd sub = g(working, Eigen::all);
    const MasterResult master = solve_master(sub, ipm_options, 0.5 * opt.tol);
    out.stats.ipm_iterations += master.ipm.iterations;
    out.stats.primal_residual = master.ipm.primal_residual;
    out.stats.dual_residual = master.ipm.dual_residual;

    Eigen::VectorXd p = master.x.cwiseMax(0.0);
    lambda_w = master.y.cwiseMax(0.0);
    if (!(p.sum() > 0.0) || !(lambda_w.sum() > 0.0) || !p.allFinite() || !lambda_w.allFinite()) {
      throw SolverError("interior-point master problem broke down");
    }
    p /= p.sum();
    lambda_w /= lambda_w.sum();
    out.weights = p;

    const Eigen::VectorXd values = g * p;
    const double m = values.minCoeff();
    const double bound = (sub.transpose() * lambda_w).maxCoeff();
    if (!generate || static_cast<Eigen::Index>(working.size()) == nr) break;
    if (bound - m <= opt.tol * m) break;

    double working_min = std::numeric_limits<double>::infinity();
    for (auto r : working) working_min = std::min(working_min, values(r));
    std::vector<Eigen::Index> added;
    for (auto r : ascending_order(values)) {
      if (values(r) >= working_min) break;
      if (!in_working[static_cast<std::size_t>(r)]) {
        added.push_back(r);
        if (static_cast<Eigen::Index>(added.size()) >= opt.rows_per_round) break;
      }
    }
    if (added.empty()) break;
    if (out.stats.rounds >= opt.max_rounds) {
      throw SolverError("row generation did not settle within the round limit");
    }
    for (auto r : added) {
      in_working[static_cast<std::size_t>(r)] = 1;
      working.push_back(r);
    }
  }

  out.duals = Eigen::VectorXd::Zero(nr);
  for (std::size_t k = 0; k < working.size(); ++k) {
    out.duals(working[k]) = lambda_w(static_cast<Eigen::Index>(k));
  }
  out.stats.working_rows = static_cast<Eigen::Index>(working.size());
  return out;
}

// Averages a vector indexed by `grid` over the four mirror images.
inline Eigen::VectorXd mirror_average(const Eigen::VectorXd& v, const LatticeGrid& grid) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    out(i) = 0.25 * (v(i) + v(static_cast<Eigen::Index>(grid.mirror_index(u, true, false))) +
                     v(static_cast<Eigen::Index>(grid.mirror_index(u, false, true))) +
                     v(static_cast<Eigen::Index>(grid.mirror_index(u, true, true))));
  }
  return out;
}

// Fills objective, bound and the certificate-style statistics, and rejects
// solutions whose duality gap exceeds the tolerance. After thresholding, the
// problem is re-solved on the surviving support so the dropped mass does not
// show up in the gap; the polished point is kept only if it certifies on the
// full grid. `symmetric` names the grids to mirror-average over, if any.
inline MaxMinSolution finish(const Eigen::MatrixXd& g, const Eigen::VectorXd& weights,
                             const Eigen::VectorXd& duals, SolverStats stats,
                             const SolveOptions& opt, const GainMatrix* symmetric = nullptr) {
  MaxMinSolution sol;
  sol.stats = stats;
  const double raw_m = (g * weights).minCoeff();
  const double raw_bound = (g.transpose() * duals).maxCoeff();
  if (!(raw_bound - raw_m <= opt.tol * raw_m)) {
    std::ostringstream msg;
    msg << "max-min solve did not reach tolerance " << opt.tol << ": relative gap "
        << (raw_bound - raw_m) / raw_m << ", primal residual " << stats.primal_residual
        << ", dual residual " << stats.dual_residual << " after " << stats.ipm_iterations
        << " interior-point iterations";
    throw SolverError(msg.str());
  }
  PowerAllocation alloc = PowerAllocation::from_weights(weights);
  sol.duals = duals / duals.sum();
  if (opt.support_threshold > 0.0) {
    alloc = extract_support(alloc, opt.support_threshold);
    if (alloc.removed_mass > 0.0 && alloc.nonzero_count() < static_cast<std::size_t>(g.cols())) {
      SolveOptions inner = opt;
      inner.support_threshold = 0.0;
      const Eigen::MatrixXd restricted = g(Eigen::all, alloc.support);
      CoreResult polished = solve_core(restricted, inner);
      sol.stats.ipm_iterations += polished.stats.ipm_iterations;
      Eigen::VectorXd w = Eigen::VectorXd::Zero(g.cols());
      for (std::size_t k = 0; k < alloc.support.size(); ++k) {
        w(alloc.support[k]) = polished.weights(static_cast<Eigen::Index>(k));
      }
      Eigen::VectorXd lam = polished.duals;
      if (symmetric != nullptr) {
        w = mirror_average(w, symmetric->tx_grid);
        lam = mirror_average(lam, symmetric->rx_grid);
      }
      lam /= lam.sum();
      const double m = (g * w).minCoeff();
      const double bound = (g.transpose() * lam).maxCoeff();
      if (bound - m <= opt.tol * m) {
        PowerAllocation tightened = extract_support(PowerAllocation::from_weights(w), opt.support_threshold);
        tightened.removed_mass += alloc.removed_mass;
        alloc = std::move(tightened);
        sol.duals = lam;
      }
    }
  }
  sol.allocation = std::move(alloc);
  const Eigen::VectorXd values = g * sol.allocation.weights;
  sol.objective_m = values.minCoeff();
  sol.dual_bound = (g.transpose() * sol.duals).maxCoeff();
  sol.stats.duality_gap = (sol.dual_bound - sol.objective_m) / sol.objective_m;
  sol.stats.complementarity =
      (sol.duals.array() * (values.array() - sol.objective_m)).maxCoeff() / sol.objective_m;
  return sol;
}

}  // namespace detail

// Maximizes the worst receiver's gain over unit-sum allocations (the
// epigraph LP max m s.t. G p >= m, 1'p = 1, p >= 0). Solutions of mirror
// symmetric instances are projected onto the symmetric optimal face.
inline MaxMinSolution solve_symmetric_reduced(const GainMatrix& gains, const SolveOptions& opt);

inline MaxMinSolution solve_maxmin(const GainMatrix& gains, const SolveOptions& opt = {}) {
  if (opt.symmetrize && opt.reduce_symmetric && gains.symmetric()) {
    return solve_symmetric_reduced(gains, opt);
  }
  detail::CoreResult core = detail::solve_core(gains.entries, opt);
  const bool sym = opt.symmetrize && gains.symmetric();
  if (sym) {
    core.weights = detail::mirror_average(core.weights, gains.tx_grid);
    core.duals = detail::mirror_average(core.duals, gains.rx_grid);
  }
  return detail::finish(gains.entries, core.weights, core.duals, core.stats, opt,
                        sym ? &gains : nullptr);
}

inline MaxMinSolution solve_maxmin(const GainMatrix& gains, double tol) {
  SolveOptions opt;
  opt.tol = tol;
  return solve_maxmin(gains, opt);
}

// Orbits of a lattice under the mirror group {x -> -x} x {z -> -z}.
struct MirrorOrbits {
  std::vector<Eigen::Index> orbit_of;
  std::vector<std::vector<Eigen::Index>> members;
};

inline MirrorOrbits mirror_orbits(const LatticeGrid& grid) {
  MirrorOrbits o;
  o.orbit_of.assign(grid.size(), -1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (o.orbit_of[i] >= 0) continue;
    const auto id = static_cast<Eigen::Index>(o.members.size());
    std::vector<Eigen::Index> orbit;
    for (auto j : {i, grid.mirror_index(i, true, false), grid.mirror_index(i, false, true),
                   grid.mirror_index(i, true, true)}) {
      if (o.orbit_of[j] < 0) {
        o.orbit_of[j] = id;
        orbit.push_back(static_cast<Eigen::Index>(j));
      }
    }
    o.members.push_back(std::move(orbit));
  }
  return o;
}

// Same problem solved over mirror orbits: one variable per transmit orbit
// (power spread evenly over its members) and one constraint per receiver
// orbit. A symmetric optimum always exists, so the objective is unchanged.
inline MaxMinSolution solve_symmetric_reduced(const GainMatrix& gains, const SolveOptions& opt = {}) {
  detail::require(gains.symmetric(), "symmetric reduction needs mirror-symmetric grids");
  detail::validate_gains(gains.entries);
  const MirrorOrbits tx = mirror_orbits(gains.tx_grid);
  const MirrorOrbits rx = mirror_orbits(gains.rx_grid);
  const auto ntx = static_cast<Eigen::Index>(tx.members.size());
  const auto nrx = static_cast<Eigen::Index>(rx.members.size());

  Eigen::MatrixXd reduced(nrx, ntx);
  for (Eigen::Index o = 0; o < ntx; ++o) {
    const auto& cols = tx.members[static_cast<std::size_t>(o)];
    for (Eigen::Index q = 0; q < nrx; ++q) {
      const Eigen::Index rep = rx.members[static_cast<std::size_t>(q)].front();
      double sum = 0.0;
      for (auto t : cols) sum += gains.entries(rep, t);
      reduced(q, o) = sum / static_cast<double>(cols.size());
    }
  }
  SolveOptions inner = opt;
  inner.support_threshold = 0.0;
  detail::CoreResult core = detail::solve_core(reduced, inner);

  Eigen::VectorXd weights(gains.cols());
  for (Eigen::Index o = 0; o < ntx; ++o) {
    const auto& cols = tx.members[static_cast<std::size_t>(o)];
    for (auto t : cols) weights(t) = core.weights(o) / static_cast<double>(cols.size());
  }
  Eigen::VectorXd duals(gains.rows());
  for (Eigen::Index q = 0; q < nrx; ++q) {
    const auto& rows = rx.members[static_cast<std::size_t>(q)];
    for (auto r : rows) duals(r) = core.duals(q) / static_cast<double>(rows.size());
  }
  core.stats.reduced = true;
  return detail::finish(gains.entries, weights, duals, core.stats, opt, &gains);
}

struct OracleResult {
  double objective = 0.0;    // achieved worst-receiver value (lower bound)
  double upper_bound = 0.0;  // optimum of the last master problem
  Eigen::VectorXd weights;
  std::vector<Eigen::Index> rows;  // receivers in the final master problem
  int iterations = 0;
};

// Kelley-style cutting planes on receivers: the master problem keeps only
// the receivers added so far and is solved exactly by the simplex method;
// each round adds the currently worst receiver (lowest value, then lowest
// index). Independent of the interior-point path.
inline OracleResult cutting_plane_oracle(const GainMatrix& gains, double tol = 1e-11,
                                         int max_iterations = -1) {
  const Eigen::MatrixXd& g = gains.entries;
  detail::validate_gains(g);
  const Eigen::Index nr = g.rows();
  const Eigen::Index nt = g.cols();
  if (max_iterations < 0) max_iterations = static_cast<int>(nr) + 1;

  auto worst_row = [&](const Eigen::VectorXd& values) {
    Eigen::Index best = 0;
    for (Eigen::Index r = 1; r < nr; ++r) {
      if (values(r) < values(best)) best = r;
    }
    return best;
  };

  OracleResult out;
  out.rows.push_back(worst_row(g.rowwise().mean()));
  for (;;) {
    ++out.iterations;
    // Master: max 1'y s.t. G_W' y <= 1, y >= 0. Its row multipliers x solve
    // min 1'x s.t. G_W x >= 1, x >= 0.
    const Eigen::MatrixXd master = g(out.rows, Eigen::all).transpose();
    const lp::SimplexResult sx = lp::simplex_max(master, Eigen::VectorXd::Ones(nt),
                                                 Eigen::VectorXd::Ones(static_cast<Eigen::Index>(out.rows.size())));
    if (!(sx.value > 0.0)) throw SolverError("cutting-plane master problem is degenerate");
    out.upper_bound = 1.0 / sx.value;
    out.weights = sx.duals / sx.duals.sum();
    const Eigen::VectorXd values = g * out.weights;
    const Eigen::Index r = worst_row(values);
    out.objective = values(r);
    if (out.upper_bound - out.objective <= tol * out.upper_bound) break;
    if (std::find(out.rows.begin(), out.rows.end(), r) != out.rows.end()) break;
    if (out.iterations >= max_iterations) throw SolverError("cutting-plane oracle hit its iteration cap");
    out.rows.push_back(r);
  }
  return out;
}

}  // namespace wpt

#endif  // WPT_SOLVER_HPP
