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


#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "wpt/experiments.hpp"
#include "wpt/geometry.hpp"

namespace {

using wpt::ArrayLayout;
using wpt::Dimensionality;
using wpt::RoomGeometry;

bool contains(const wpt::LatticeGrid& g, double x, double z, double tol = 1e-12) {
  return std::any_of(g.positions.begin(), g.positions.end(),
                     [&](const wpt::Point2& p) { return std::abs(p.x - x) <= tol && std::abs(p.z - z) <= tol; });
}

TEST(TxGrid, PlanarLod81CoversCeilingWithEndpoints) {
  const RoomGeometry room{2.0, 2.0, 2.0};
  const auto g = wpt::build_tx_grid(wpt::full_ceiling(room, Dimensionality::two_d, 81), room);
  EXPECT_EQ(g.size(), 6561u);
  EXPECT_NEAR(g.spacing, 0.025, 1e-15);
  EXPECT_EQ(g.plane_y, 0.0);
  EXPECT_TRUE(contains(g, 0.0, 0.0, 0.0));
  for (double sx : {-1.0, 1.0}) {
    for (double sz : {-1.0, 1.0}) EXPECT_TRUE(contains(g, sx, sz, 0.0));
  }
}

TEST(TxGrid, Lod1IsTheCentre) {
  const RoomGeometry room{2.0, 2.0, 2.0};
  const auto g = wpt::build_tx_grid(wpt::full_ceiling(room, Dimensionality::two_d, 1), room);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.positions[0].x, 0.0);
  EXPECT_EQ(g.positions[0].z, 0.0);
}

TEST(TxGrid, LinearArrayRunsAlongXAtZeroZ) {
  const RoomGeometry room{6.0, 2.0, 6.0};
  const auto g = wpt::build_tx_grid(wpt::full_ceiling(room, Dimensionality::one_d, 81), room);
  ASSERT_EQ(g.size(), 81u);
  EXPECT_EQ(g.positions.front().x, -3.0);
  EXPECT_EQ(g.positions.back().x, 3.0);
  for (const auto& p : g.positions) EXPECT_EQ(p.z, 0.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g.positions[i].x, g.positions[i - 1].x);
}

TEST(TxGrid, RejectsZeroLodAndOversizedExtent) {
  const RoomGeometry room{2.0, 2.0, 2.0};
  EXPECT_THROW(wpt::build_tx_grid(ArrayLayout{Dimensionality::two_d, 2.0, 2.0, 0}, room), wpt::InvalidArgument);
  EXPECT_THROW(wpt::build_tx_grid(ArrayLayout{Dimensionality::two_d, 2.5, 2.0, 5}, room), wpt::InvalidArgument);
  EXPECT_THROW(wpt::build_tx_grid(ArrayLayout{Dimensionality::two_d, 2.0, 2.5, 5}, room), wpt::InvalidArgument);
  EXPECT_THROW((RoomGeometry{0.0, 2.0, 2.0}.validate()), wpt::InvalidArgument);
}

TEST(RxGrid, FloorPlaneLod81IncludesCorners) {
  const RoomGeometry room{2.0, 2.0, 2.0};
  const auto g = wpt::build_rx_grid(room, 81);
  EXPECT_EQ(g.size(), 6561u);
  EXPECT_EQ(g.plane_y, 2.0);
  for (double sx : {-1.0, 1.0}) {
    for (double sz : {-1.0, 1.0}) EXPECT_TRUE(contains(g, sx, sz, 0.0));
  }
}

TEST(RxGrid, Lod3HasNinePointsIncludingCentre) {
  const auto g = wpt::build_rx_grid(RoomGeometry{2.0, 2.0, 2.0}, 3);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_TRUE(contains(g, 0.0, 0.0, 0.0));
  const auto p = g.point3(4);
  EXPECT_EQ(p.x, 0.0);
  EXPECT_EQ(p.y, 2.0);
  EXPECT_EQ(p.z, 0.0);
  EXPECT_THROW(wpt::build_rx_grid(RoomGeometry{2.0, 2.0, 2.0}, 0), wpt::InvalidArgument);
}

TEST(RxGrid, VolumeStackHasFiveLevelsEndingAtTheFloor) {
  const RoomGeometry room{6.0, 2.0, 6.0};
  const auto stack = wpt::build_rx_volume(room, 11, 0.00625, 5);
  ASSERT_EQ(stack.size(), 5u);
  EXPECT_DOUBLE_EQ(stack.front().plane_y, 0.2);  // 0.1 len_y dominates the reactive boundary
  EXPECT_EQ(stack.back().plane_y, 2.0);
  for (std::size_t k = 1; k < stack.size(); ++k) {
    EXPECT_GT(stack[k].plane_y, stack[k - 1].plane_y);
    if (k + 1 < stack.size()) {
      EXPECT_NEAR(stack[k].plane_y / stack[k - 1].plane_y, stack[k + 1].plane_y / stack[k].plane_y, 1e-12);
    }
  }
}

// Every lattice is closed under x -> -x and z -> -z, and mirror_index finds
// the image.
TEST(GridProperties, MirrorClosure) {
  const RoomGeometry room{8.0, 2.0, 8.0};
  for (int lod : {1, 2, 5, 8, 21, 40}) {
    for (auto dim : {Dimensionality::one_d, Dimensionality::two_d}) {
      const auto g = wpt::build_tx_grid(wpt::full_ceiling(room, dim, lod), room);
      ASSERT_TRUE(g.fully_symmetric());
      std::set<std::pair<double, double>> points;
      for (const auto& p : g.positions) points.insert({p.x, p.z});
      EXPECT_EQ(points.size(), g.size()) << "positions must be distinct";
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& p = g.positions[i];
        EXPECT_TRUE(points.count({-p.x, p.z}) && points.count({p.x, -p.z}) && points.count({-p.x, -p.z}));
        const auto& mx = g.positions[g.mirror_index(i, true, false)];
        const auto& mz = g.positions[g.mirror_index(i, false, true)];
        EXPECT_EQ(mx.x, -p.x);
        EXPECT_EQ(mx.z, p.z);
        EXPECT_EQ(mz.x, p.x);
        EXPECT_EQ(mz.z, -p.z);
      }
    }
  }
}

TEST(GridProperties, OddLodContainsOrigin) {
  const RoomGeometry room{6.0, 2.0, 6.0};
  for (int lod : {3, 21, 41, 81}) {
    EXPECT_TRUE(contains(wpt::build_tx_grid(wpt::full_ceiling(room, Dimensionality::two_d, lod), room), 0, 0, 0));
    EXPECT_TRUE(contains(wpt::build_tx_grid(wpt::full_ceiling(room, Dimensionality::one_d, lod), room), 0, 0, 0));
  }
}

TEST(NearField, FraunhoferOfTwoMetreAperture) {
  const auto b = wpt::near_field_bounds(2.0, 0.0125, 0.0125);
  EXPECT_DOUBLE_EQ(b.d_fraunhofer, 640.0);
  EXPECT_DOUBLE_EQ(b.d_fresnel, 0.00625);  // lambda / 2
  EXPECT_LT(b.d_fresnel, b.d_fraunhofer);
}

TEST(NearField, RejectsNonpositiveInputs) {
  EXPECT_THROW(wpt::near_field_bounds(2.0, 0.0, 0.0125), wpt::InvalidArgument);
  EXPECT_THROW(wpt::near_field_bounds(0.0, 0.0125, 0.0125), wpt::InvalidArgument);
  EXPECT_THROW(wpt::near_field_bounds(2.0, 0.0125, -1.0), wpt::InvalidArgument);
}

// All reference rooms lie deep inside the radiating near field of their
// ceiling array.
TEST(NearField, ReferenceRoomsAreWithinFraunhoferDistance) {
  for (const auto& env : wpt::reference_environments()) {
    const auto b = wpt::near_field_bounds(env.room.len_x, 0.0125, 0.0125);
    EXPECT_GT(b.d_fraunhofer, 100.0 * wpt::room_diagonal(env.room)) << env.id;
  }
}

}  // namespace
