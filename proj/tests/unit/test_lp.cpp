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


#include <gtest/gtest.h>

#include "wpt/lp/interior_point.hpp"
#include "wpt/lp/simplex.hpp"

namespace {

// minimize x1 + x2  s.t.  x1 + 2 x2 >= 2,  3 x1 + x2 >= 3,  x >= 0.
// Both constraints bind at the optimum (4/5, 3/5) with value 7/5; the duals
// solve y1 + 3 y2 = 1, 2 y1 + y2 = 1, i.e. y = (2/5, 1/5).
TEST(InteriorPoint, TwoVariableInequalityLp) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 1;
  const Eigen::VectorXd b = Eigen::Vector2d(2, 3);
  const Eigen::VectorXd c = Eigen::Vector2d(1, 1);
  const auto r = wpt::lp::solve_inequality_lp(a, b, c);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 0.8, 1e-8);
  EXPECT_NEAR(r.x(1), 0.6, 1e-8);
  EXPECT_NEAR(r.y(0), 0.4, 1e-8);
  EXPECT_NEAR(r.y(1), 0.2, 1e-8);
  EXPECT_NEAR(r.primal_objective, 1.4, 1e-8);
  EXPECT_NEAR(r.dual_objective, 1.4, 1e-8);
}

// A redundant constraint keeps a zero multiplier and a positive surplus.
TEST(InteriorPoint, RedundantConstraint) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 2, 3, 1, 1, 1;
  const Eigen::VectorXd b = Eigen::Vector3d(2, 3, 0.5);
  const auto r = wpt::lp::solve_inequality_lp(a, b, Eigen::Vector2d(1, 1));
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.primal_objective, 1.4, 1e-8);
  EXPECT_NEAR(r.y(2), 0.0, 1e-8);
  EXPECT_NEAR(r.s(2), 0.9, 1e-8);
}

TEST(InteriorPoint, AcceptancePredicateStopsEarly) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 1;
  int calls = 0;
  const auto r = wpt::lp::solve_inequality_lp(a, Eigen::Vector2d(2, 3), Eigen::Vector2d(1, 1), {},
                                              [&](const wpt::lp::IpmResult&) { return ++calls == 3; });
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}

TEST(InteriorPoint, RejectsInconsistentDimensions) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 1;
  EXPECT_THROW(wpt::lp::solve_inequality_lp(a, Eigen::Vector3d(1, 1, 1), Eigen::Vector2d(1, 1)),
               wpt::InvalidArgument);
}

// maximize 3 y1 + 5 y2  s.t.  y1 <= 4,  2 y2 <= 12,  3 y1 + 2 y2 <= 18:
// optimum (2, 6) with value 36 and row duals (0, 3/2, 1).
TEST(Simplex, TextbookMaximization) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  const auto r = wpt::lp::simplex_max(a, Eigen::Vector3d(4, 12, 18), Eigen::Vector2d(3, 5));
  EXPECT_NEAR(r.value, 36.0, 1e-12);
  EXPECT_NEAR(r.y(0), 2.0, 1e-12);
  EXPECT_NEAR(r.y(1), 6.0, 1e-12);
  EXPECT_NEAR(r.duals(0), 0.0, 1e-12);
  EXPECT_NEAR(r.duals(1), 1.5, 1e-12);
  EXPECT_NEAR(r.duals(2), 1.0, 1e-12);
}

}  // namespace
