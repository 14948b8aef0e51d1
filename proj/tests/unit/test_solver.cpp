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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wpt/channel.hpp"
#include "wpt/geometry.hpp"
#include "wpt/solver.hpp"

namespace {

using wpt::Dimensionality;
using wpt::GainMatrix;
using wpt::RoomGeometry;

GainMatrix room_gains(const RoomGeometry& room, int lod, Dimensionality dim = Dimensionality::two_d) {
  return wpt::gain_matrix(wpt::build_tx_grid(wpt::full_ceiling(room, dim, lod), room), wpt::build_rx_grid(room, lod));
}

GainMatrix random_gains(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = u(rng);
  }
  return GainMatrix::from_entries(m);
}

TEST(SolveMaxmin, SingleColumnTakesAllPower) {
  Eigen::MatrixXd g(3, 1);
  g << 0.4, 0.2, 0.3;
  const auto s = wpt::solve_maxmin(GainMatrix::from_entries(g));
  ASSERT_EQ(s.allocation.size(), 1);
  EXPECT_DOUBLE_EQ(s.allocation.weights(0), 1.0);
  EXPECT_NEAR(s.objective_m, 0.2, 1e-12);
}

TEST(SolveMaxmin, CubeLod81UsesOnlyTheCentre) {
  const auto g = room_gains({2.0, 2.0, 2.0}, 81);
  const auto s = wpt::solve_maxmin(g);
  ASSERT_EQ(s.allocation.nonzero_count(), 1u);
  const auto centre = s.allocation.support.front();
  EXPECT_EQ(g.tx_grid.positions[static_cast<std::size_t>(centre)].x, 0.0);
  EXPECT_EQ(g.tx_grid.positions[static_cast<std::size_t>(centre)].z, 0.0);
  EXPECT_DOUBLE_EQ(s.allocation.weights(centre), 1.0);
  EXPECT_NEAR(s.objective_m, 1.0 / 6.0, 1e-12);  // worst receiver in a floor corner
}

TEST(SolveMaxmin, Room1to3Lod81HasTwelveAntennas) {
  const auto s = wpt::solve_maxmin(room_gains({6.0, 2.0, 6.0}, 81));
  EXPECT_EQ(s.allocation.nonzero_count(), 12u);
  EXPECT_LE(s.stats.duality_gap, 1e-9);
}

TEST(SolveMaxmin, MatchesOracleOnRandomInstance) {
  std::mt19937_64 rng(5);
  const auto g = random_gains(rng, 5, 4);
  const auto s = wpt::solve_maxmin(g);
  const auto o = wpt::cutting_plane_oracle(g);
  EXPECT_NEAR(s.objective_m, o.objective, 1e-8 * o.objective);
}

// Optimality conditions of the returned triple: feasibility, duality gap and
// complementary slackness, all relative to m.
TEST(SolveMaxmin, ReturnsCertifiedTriple) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    const auto g = random_gains(rng, 30, 20);
    const auto s = wpt::solve_maxmin(g);
    EXPECT_NEAR(s.allocation.weights.sum(), 1.0, 1e-9);
    EXPECT_TRUE((s.allocation.weights.array() >= 0.0).all());
    EXPECT_TRUE((s.duals.array() >= 0.0).all());
    EXPECT_NEAR(s.duals.sum(), 1.0, 1e-12);
    const Eigen::VectorXd values = g.entries * s.allocation.weights;
    EXPECT_NEAR(s.objective_m, values.minCoeff(), 1e-8 * s.objective_m);
    const double bound = (g.entries.transpose() * s.duals).maxCoeff();
    EXPECT_LE(bound - s.objective_m, 1e-9 * s.objective_m);
    EXPECT_LE((s.duals.array() * (values.array() - s.objective_m)).maxCoeff(), 1e-9 * s.objective_m);
  }
}

TEST(SolveMaxmin, RowGenerationMatchesFullSolve) {
  std::mt19937_64 rng(3);
  const auto g = random_gains(rng, 300, 40);
  wpt::SolveOptions full, generated;
  full.row_generation = wpt::RowGeneration::never;
  generated.row_generation = wpt::RowGeneration::always;
  generated.rows_per_round = 16;
  const auto a = wpt::solve_maxmin(g, full);
  const auto b = wpt::solve_maxmin(g, generated);
  EXPECT_NEAR(a.objective_m, b.objective_m, 1e-9 * a.objective_m);
  EXPECT_GT(b.stats.rounds, 1);
}

TEST(SolveMaxmin, RejectsInvalidGains) {
  EXPECT_THROW(wpt::solve_maxmin(GainMatrix::from_entries(Eigen::MatrixXd(0, 0))), wpt::InvalidArgument);
  Eigen::MatrixXd g(1, 2);
  g << 0.2, -0.1;
  EXPECT_THROW(wpt::solve_maxmin(GainMatrix::from_entries(g)), wpt::InvalidArgument);
  g << 0.2, std::nan("");
  EXPECT_THROW(wpt::solve_maxmin(GainMatrix::from_entries(g)), wpt::InvalidArgument);
}

TEST(ExtractSupport, DropsTinyWeights) {
  Eigen::VectorXd w(3);
  w << 0.5, 0.5, 1e-8;
  const auto a = wpt::extract_support(wpt::PowerAllocation{w, {0, 1, 2}, 0.0, 0.0});
  EXPECT_EQ(a.nonzero_count(), 2u);
  EXPECT_DOUBLE_EQ(a.weights(2), 0.0);
  EXPECT_NEAR(a.weights(0), 0.5, 1e-15);
  EXPECT_NEAR(a.weights.sum(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(a.removed_mass, 1e-8);
  EXPECT_EQ(a.threshold_applied, 1e-6);
}

TEST(ExtractSupport, IdentityAndDegenerateCases) {
  const auto one = wpt::extract_support(wpt::PowerAllocation::from_weights(Eigen::VectorXd::Ones(1)));
  EXPECT_EQ(one.weights(0), 1.0);
  EXPECT_THROW(wpt::extract_support(wpt::PowerAllocation::from_weights(Eigen::VectorXd::Constant(4, 1.0)), 0.5),
               wpt::InvalidArgument);
}

TEST(SymmetricReduced, CubeMatchesFullSolve) {
  const auto g = room_gains({2.0, 2.0, 2.0}, 21);
  wpt::SolveOptions full;
  full.reduce_symmetric = false;
  const auto a = wpt::solve_maxmin(g, full);
  const auto b = wpt::solve_symmetric_reduced(g);
  EXPECT_TRUE(b.stats.reduced);
  EXPECT_FALSE(a.stats.reduced);
  EXPECT_EQ(a.allocation.support, b.allocation.support);
  EXPECT_EQ(b.allocation.nonzero_count(), 1u);
}

TEST(SymmetricReduced, Room1to3Lod81MatchesFullSolve) {
  const auto g = room_gains({6.0, 2.0, 6.0}, 81);
  wpt::SolveOptions full;
  full.reduce_symmetric = false;
  const auto a = wpt::solve_maxmin(g, full);
  const auto b = wpt::solve_symmetric_reduced(g);
  EXPECT_NEAR(a.objective_m, b.objective_m, 1e-8 * a.objective_m);
  EXPECT_EQ(a.allocation.nonzero_count(), b.allocation.nonzero_count());
}

TEST(SymmetricReduced, RejectsGridlessGains) {
  EXPECT_THROW(wpt::solve_symmetric_reduced(GainMatrix::from_entries(Eigen::MatrixXd::Ones(2, 2))),
               wpt::InvalidArgument);
}

TEST(Oracle, TrivialInstances) {
  EXPECT_DOUBLE_EQ(wpt::cutting_plane_oracle(GainMatrix::from_entries(Eigen::MatrixXd::Constant(1, 1, 0.25))).objective,
                   0.25);
  Eigen::MatrixXd g(1, 2);
  g << 0.25, 0.1;
  const auto o = wpt::cutting_plane_oracle(GainMatrix::from_entries(g));
  EXPECT_NEAR(o.objective, 0.25, 1e-15);
  EXPECT_NEAR(o.weights(0), 1.0, 1e-15);
  EXPECT_NEAR(o.weights(1), 0.0, 1e-15);
}

TEST(Oracle, AgreesWithInteriorPointOnRandomInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 50);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_gains(rng, dim(rng), dim(rng));
    const double m = wpt::solve_maxmin(g).objective_m;
    const auto o = wpt::cutting_plane_oracle(g);
    EXPECT_NEAR(m, o.objective, 1e-8 * o.objective) << "instance " << k;
    EXPECT_LE(o.objective, o.upper_bound * (1.0 + 1e-12));
  }
}

// Scaling every gain by s scales m by s and leaves the allocation unchanged.
TEST(SolverProperties, ScaleEquivariance) {
  const auto g = room_gains({8.0, 2.0, 8.0}, 21);
  const auto base = wpt::solve_maxmin(g);
  for (double s : {1e-3, 7.25, 1e4}) {
    GainMatrix scaled = g;
    scaled.entries *= s;
    const auto r = wpt::solve_maxmin(scaled);
    EXPECT_NEAR(r.objective_m, s * base.objective_m, 1e-9 * s * base.objective_m);
    EXPECT_EQ(r.allocation.support, base.allocation.support);
    EXPECT_LT((r.allocation.weights - base.allocation.weights).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(SolverProperties, SymmetricSolutionsAreMirrorInvariant) {
  const auto g = room_gains({8.0, 2.0, 8.0}, 41);
  wpt::SolveOptions full;
  full.reduce_symmetric = false;
  for (const auto& s : {wpt::solve_maxmin(g), wpt::solve_maxmin(g, full)}) {
    for (std::size_t i = 0; i < g.tx_grid.size(); ++i) {
      for (bool fx : {false, true}) {
        const auto j = static_cast<Eigen::Index>(g.tx_grid.mirror_index(i, fx, !fx));
        EXPECT_LE(std::abs(s.allocation.weights(static_cast<Eigen::Index>(i)) - s.allocation.weights(j)), 1e-6);
      }
    }
  }
}

// Deleting a column dominated entrywise by another keeps the optimum.
TEST(SolverProperties, DominatedColumnIsIrrelevant) {
  std::mt19937_64 rng(8);
  const auto g = random_gains(rng, 25, 10);
  Eigen::MatrixXd with(25, 11);
  with << g.entries, 0.9 * g.entries.col(3);
  const auto a = wpt::solve_maxmin(g);
  const auto b = wpt::solve_maxmin(GainMatrix::from_entries(with));
  EXPECT_NEAR(a.objective_m, b.objective_m, 1e-9 * a.objective_m);
  EXPECT_LT(b.allocation.weights(10), 1e-6);
}

TEST(SolverProperties, DualsOnlyOnWorstReceivers) {
  const auto g = room_gains({10.0, 2.0, 10.0}, 21);
  const auto s = wpt::solve_maxmin(g);
  const Eigen::VectorXd values = g.entries * s.allocation.weights;
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    if (s.duals(r) > 1e-8) {
      EXPECT_LE(values(r) - s.objective_m, 1e-6 * s.objective_m) << r;
    }
  }
}

// Faded gains carry no mirror symmetry and go through the general path.
TEST(SolverProperties, FadedGainsSolveWithoutSymmetrization) {
  const auto g = room_gains({6.0, 2.0, 6.0}, 11);
  const auto f = wpt::sample_rician_gains(g, wpt::PhysicalParams{}, 1, true);
  const auto s = wpt::solve_maxmin(f.faded_gains);
  EXPECT_FALSE(s.stats.reduced);
  EXPECT_LE(s.stats.duality_gap, 1e-9);
  const auto o = wpt::cutting_plane_oracle(f.faded_gains);
  EXPECT_NEAR(s.objective_m, o.objective, 1e-8 * o.objective);
}

}  // namespace
