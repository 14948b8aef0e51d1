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
#include <numbers>

#include <gtest/gtest.h>

#include "wpt/channel.hpp"
#include "wpt/geometry.hpp"
#include "wpt/schemes.hpp"
#include "wpt/solver.hpp"

namespace {

using wpt::GainMatrix;
using wpt::PowerAllocation;
using wpt::RoomGeometry;
using wpt::SchemeId;

GainMatrix room_gains(const RoomGeometry& room, int lod) {
  return wpt::gain_matrix(wpt::build_tx_grid(wpt::full_ceiling(room, wpt::Dimensionality::two_d, lod), room),
                          wpt::build_rx_grid(room, lod));
}

TEST(FarField, PicksTheCentre) {
  const auto grid = wpt::detail::make_lattice(6.0, 81, 6.0, 81, 2.0);
  const auto a = wpt::scheme_far_field(grid);
  ASSERT_EQ(a.nonzero_count(), 1u);
  const auto i = static_cast<std::size_t>(a.support.front());
  EXPECT_EQ(grid.positions[i].x, 0.0);
  EXPECT_EQ(grid.positions[i].z, 0.0);
}

TEST(FarField, SinglePointAndTies) {
  EXPECT_EQ(wpt::scheme_far_field(wpt::detail::make_lattice(1.0, 1, 1.0, 1, 2.0)).weights(0), 1.0);
  // Even counts have four equidistant points; the first one wins.
  const auto a = wpt::scheme_far_field(wpt::detail::make_lattice(1.0, 2, 1.0, 2, 2.0));
  EXPECT_EQ(a.weights(0), 1.0);
  EXPECT_THROW(wpt::scheme_far_field(wpt::LatticeGrid{}), wpt::InvalidArgument);
}

TEST(Uniform, SpreadsEvenly) {
  const auto a = wpt::scheme_uniform(wpt::detail::make_lattice(1.0, 2, 1.0, 2, 2.0));
  EXPECT_TRUE(a.weights.isApprox(Eigen::Vector4d::Constant(0.25)));
  EXPECT_EQ(wpt::scheme_uniform(wpt::detail::make_lattice(1.0, 1, 1.0, 1, 2.0)).weights(0), 1.0);
}

TEST(PercentilePrune, NearestRankExample) {
  const auto a = wpt::scheme_percentile_prune(
      PowerAllocation::from_weights(Eigen::Vector4d(0.4, 0.3, 0.2, 0.1)), 75.0);
  EXPECT_NEAR(a.weights(0), 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(a.weights(1), 3.0 / 7.0, 1e-15);
  EXPECT_EQ(a.weights(2), 0.0);
  EXPECT_EQ(a.weights(3), 0.0);
}

TEST(PercentilePrune, SingleAntennaUnchangedAndSupportShrinks) {
  Eigen::VectorXd one = Eigen::VectorXd::Zero(5);
  one(2) = 1.0;
  EXPECT_EQ(wpt::scheme_percentile_prune(PowerAllocation::from_weights(one)).weights, one);
  const auto g = room_gains({8.0, 2.0, 8.0}, 41);
  const auto opt = wpt::solve_maxmin(g).allocation;
  const auto pruned = wpt::scheme_percentile_prune(opt);
  EXPECT_GE(pruned.nonzero_count(), 1u);
  EXPECT_LE(pruned.nonzero_count(), opt.nonzero_count());
  EXPECT_NEAR(pruned.weights.sum(), 1.0, 1e-12);
  EXPECT_THROW(wpt::scheme_percentile_prune(PowerAllocation::from_weights(one), 0.0), wpt::InvalidArgument);
}

TEST(MinPower, FormulaSubstitution) {
  const auto g = GainMatrix::from_entries(Eigen::MatrixXd::Constant(1, 1, wpt::los_gain({0.0, 0.0}, {0.0, 2.0, 0.0})));
  EXPECT_DOUBLE_EQ(g.entries(0, 0), 0.25);
  const double p = wpt::evaluate_min_power(PowerAllocation::from_weights(Eigen::VectorXd::Ones(1)), g, {});
  const double expected = 10.0 * std::pow(0.0125 / (4.0 * std::numbers::pi), 2) * 0.25;
  EXPECT_NEAR(p, expected, 1e-18);
  EXPECT_NEAR(p, 2.4736e-6, 1e-10);
}

TEST(MinPower, ReferenceOptima) {
  const auto cube = room_gains({2.0, 2.0, 2.0}, 81);
  EXPECT_NEAR(wpt::evaluate_min_power(wpt::solve_maxmin(cube).allocation, cube, {}), 1.649e-6, 1.649e-9);
  const auto r13 = room_gains({6.0, 2.0, 6.0}, 81);
  EXPECT_NEAR(wpt::evaluate_min_power(wpt::solve_maxmin(r13).allocation, r13, {}), 6.721e-7, 0.005 * 6.721e-7);
}

TEST(MinPower, LinearInTotalPower) {
  const auto g = room_gains({6.0, 2.0, 6.0}, 11);
  const auto a = wpt::scheme_uniform(g.tx_grid);
  wpt::PhysicalParams p;
  const double base = wpt::evaluate_min_power(a, g, p);
  p.total_tx_power = 37.0;
  EXPECT_NEAR(wpt::evaluate_min_power(a, g, p), 3.7 * base, 1e-12 * base);
  EXPECT_THROW(wpt::evaluate_min_power(PowerAllocation::from_weights(Eigen::VectorXd::Ones(2)), g, p),
               wpt::InvalidArgument);
}

TEST(LossRatio, Basics) {
  EXPECT_EQ(wpt::loss_ratio(2.0, 2.0), 1.0);
  EXPECT_THROW(wpt::loss_ratio(1.0, 0.0), wpt::InvalidArgument);
}

TEST(EvaluateSchemes, ReferenceLosses) {
  const std::vector<SchemeId> all{SchemeId::m_opt, SchemeId::m_ff, SchemeId::m_uni, SchemeId::m_s75};
  const auto cube = room_gains({2.0, 2.0, 2.0}, 81);
  const auto rc = wpt::evaluate_schemes(wpt::solve_maxmin(cube), cube, {}, all);
  EXPECT_EQ(rc[0].loss_vs_opt, 1.0);
  EXPECT_NEAR(rc[1].loss_vs_opt, 1.0, 1e-9);
  EXPECT_NEAR(rc[3].loss_vs_opt, 1.0, 1e-9);

  const auto r13 = room_gains({6.0, 2.0, 6.0}, 81);
  const auto r = wpt::evaluate_schemes(wpt::solve_maxmin(r13), r13, {}, all);
  EXPECT_NEAR(r[1].loss_vs_opt, 0.6692, 0.005);
  for (const auto& s : r) EXPECT_LE(s.loss_vs_opt, 1.0 + 1e-9);

  const auto r14 = room_gains({8.0, 2.0, 8.0}, 81);
  const auto u = wpt::evaluate_schemes(wpt::solve_maxmin(r14), r14, {}, {SchemeId::m_uni});
  EXPECT_NEAR(u[0].loss_vs_opt, 0.7324, 0.005);
}

TEST(SchemeNames, RoundTrip) {
  for (SchemeId id : {SchemeId::m_opt, SchemeId::m_ff, SchemeId::m_uni, SchemeId::m_s75}) {
    EXPECT_EQ(wpt::parse_scheme(wpt::scheme_name(id)), id);
  }
  EXPECT_EQ(wpt::parse_scheme("m-uni"), SchemeId::m_uni);
  EXPECT_EQ(wpt::parse_scheme("S75"), SchemeId::m_s75);
  EXPECT_FALSE(wpt::parse_scheme("m_best").has_value());
}

}  // namespace
