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


#ifndef WPT_SCHEMES_HPP
#define WPT_SCHEMES_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wpt/channel.hpp"
#include "wpt/error.hpp"
#include "wpt/geometry.hpp"
#include "wpt/solver.hpp"

namespace wpt {

enum class SchemeId { m_opt, m_ff, m_uni, m_s75 };

inline std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::m_opt: return "M-OPT";
    case SchemeId::m_ff: return "M-FF";
    case SchemeId::m_uni: return "M-UNI";
    case SchemeId::m_s75: return "M-S75";
  }
  return "?";
}

// Accepts "M-OPT", "m_opt", "opt" and similar spellings, case-insensitively.
inline std::optional<SchemeId> parse_scheme(std::string_view text) {
  std::string key;
  for (char ch : text) {
    if (ch == '-' || ch == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (key.rfind('m', 0) == 0 && key.size() > 1) key.erase(0, 1);
  if (key == "opt") return SchemeId::m_opt;
  if (key == "ff") return SchemeId::m_ff;
  if (key == "uni") return SchemeId::m_uni;
  if (key == "s75") return SchemeId::m_s75;
  return std::nullopt;
}

struct SchemeResult {
  SchemeId scheme_id = SchemeId::m_opt;
  PowerAllocation allocation;
  double min_power_watts = 0.0;
  double loss_vs_opt = 1.0;
};

// All power on the grid point nearest the array centre (lowest index on ties).
inline PowerAllocation scheme_far_field(const LatticeGrid& tx_grid) {
  detail::require(!tx_grid.empty(), "far-field scheme needs a nonempty grid");
  std::size_t best = 0;
  double best_r2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tx_grid.size(); ++i) {
    const Point2 p = tx_grid.positions[i];
    const double r2 = p.x * p.x + p.z * p.z;
    if (r2 < best_r2) {
      best_r2 = r2;
      best = i;
    }
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tx_grid.size()));
  w(static_cast<Eigen::Index>(best)) = 1.0;
  return PowerAllocation::from_weights(std::move(w));
}

inline PowerAllocation scheme_uniform(const LatticeGrid& tx_grid) {
  detail::require(!tx_grid.empty(), "uniform scheme needs a nonempty grid");
  return PowerAllocation::from_weights(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(tx_grid.size())));
}

// Drops the antennas whose power lies strictly below the nearest-rank
// percentile of the nonzero weights and renormalizes.
inline PowerAllocation scheme_percentile_prune(const PowerAllocation& opt, double percentile = 75.0) {
  detail::require(percentile > 0.0 && percentile <= 100.0, "percentile must lie in (0, 100]");
  std::vector<double> nonzero;
  for (Eigen::Index i = 0; i < opt.weights.size(); ++i) {
    if (opt.weights(i) > 0.0) nonzero.push_back(opt.weights(i));
  }
  detail::require(!nonzero.empty(), "allocation has an empty support");
  std::sort(nonzero.begin(), nonzero.end());
  const auto n = static_cast<double>(nonzero.size());
  const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(percentile / 100.0 * n)));
  const double cutoff = nonzero[rank - 1];
  Eigen::VectorXd w = opt.weights;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < cutoff) w(i) = 0.0;
  }
  return PowerAllocation::from_weights(std::move(w));
}

// Received power (W) at the worst receiver:
// total_tx_power * gain_calibration * min_r (G p)_r.
inline double evaluate_min_power(const PowerAllocation& allocation, const GainMatrix& gains,
                                 const PhysicalParams& params) {
  detail::require(allocation.size() == gains.cols(), "allocation does not match the transmit count");
  return params.total_tx_power * params.calibration() * (gains.entries * allocation.weights).minCoeff();
}

inline double loss_ratio(double scheme_power, double opt_power) {
  detail::require(opt_power > 0.0, "reference power must be positive");
  return scheme_power / opt_power;
}

// Evaluates `schemes` against the certified optimum `opt` of the same gains.
inline std::vector<SchemeResult> evaluate_schemes(const MaxMinSolution& opt, const GainMatrix& gains,
                                                  const PhysicalParams& params,
                                                  const std::vector<SchemeId>& schemes) {
  const double opt_power = evaluate_min_power(opt.allocation, gains, params);
  std::vector<SchemeResult> out;
  for (SchemeId id : schemes) {
    SchemeResult r;
    r.scheme_id = id;
    switch (id) {
      case SchemeId::m_opt: r.allocation = opt.allocation; break;
      case SchemeId::m_ff: r.allocation = scheme_far_field(gains.tx_grid); break;
      case SchemeId::m_uni: r.allocation = scheme_uniform(gains.tx_grid); break;
      case SchemeId::m_s75: r.allocation = scheme_percentile_prune(opt.allocation, 75.0); break;
    }
    r.min_power_watts = evaluate_min_power(r.allocation, gains, params);
    r.loss_vs_opt = id == SchemeId::m_opt ? 1.0 : loss_ratio(r.min_power_watts, opt_power);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace wpt

#endif  // WPT_SCHEMES_HPP
