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

#ifndef WPT_CHANNEL_HPP
#define WPT_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "wpt/error.hpp"
#include "wpt/geometry.hpp"

namespace wpt {

// Normalized line-of-sight gain |g|^2 / c = 1 / D^2 (units 1/m^2) between a
// ceiling element and a receiver.
inline double los_gain(Point2 tx, Point3 rx) {
  detail::require(rx.y > 0.0, "receiver must lie below the transmit plane");
  const double dx = rx.x - tx.x;
  const double dz = rx.z - tx.z;
  return 1.0 / (dx * dx + rx.y * rx.y + dz * dz);
}

inline double distance(Point2 tx, Point3 rx) {
  const double dx = rx.x - tx.x;
  const double dz = rx.z - tx.z;
  return std::sqrt(dx * dx + rx.y * rx.y + dz * dz);
}

// Receiver-major matrix of normalized gains: entries(r, t) belongs to
// receiver r and transmit position t. Grids may be empty for synthetic
// instances.
struct GainMatrix {
  Eigen::MatrixXd entries;
  LatticeGrid rx_grid;
  LatticeGrid tx_grid;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }

  bool has_grids() const {
    return rx_grid.size() == static_cast<std::size_t>(entries.rows()) &&
           tx_grid.size() == static_cast<std::size_t>(entries.cols()) && !rx_grid.empty();
  }
  bool symmetric() const {
    return has_grids() && rx_grid.fully_symmetric() && tx_grid.fully_symmetric();
  }

  static GainMatrix from_entries(Eigen::MatrixXd entries) {
    GainMatrix g;
    g.entries = std::move(entries);
    return g;
  }
};

inline GainMatrix gain_matrix(const LatticeGrid& tx_grid, const LatticeGrid& rx_grid) {
  detail::require(!tx_grid.empty() && !rx_grid.empty(), "grids must be nonempty");
  detail::require(rx_grid.plane_y > 0.0, "receiver plane must lie below the ceiling");
  GainMatrix g;
  g.tx_grid = tx_grid;
  g.rx_grid = rx_grid;
  const auto nr = static_cast<Eigen::Index>(rx_grid.size());
  const auto nt = static_cast<Eigen::Index>(tx_grid.size());
  g.entries.resize(nr, nt);
  for (Eigen::Index t = 0; t < nt; ++t) {
    const Point2 a = tx_grid.positions[static_cast<std::size_t>(t)];
    for (Eigen::Index r = 0; r < nr; ++r) {
      g.entries(r, t) = los_gain(a, rx_grid.point3(static_cast<std::size_t>(r)));
    }
  }
  return g;
}

// Gains from every transmit position to every receiver of a height stack.
inline std::vector<GainMatrix> gain_matrices(const LatticeGrid& tx_grid,
                                             const std::vector<LatticeGrid>& rx_stack) {
  std::vector<GainMatrix> out;
  out.reserve(rx_stack.size());
  for (const auto& rx : rx_stack) out.push_back(gain_matrix(tx_grid, rx));
  return out;
}

enum class AvgDistancePolicy { mean_pairwise, fixed };

// Physical constants of the link. Quantities that default to functions of
// the wavelength are optional and resolved by the accessors.
struct PhysicalParams {
  double total_tx_power = 10.0;  // W
  double wavelength = 0.0125;    // m
  std::optional<double> rx_aperture;       // S_RX, m^2; default lambda^2 / 4
  std::optional<double> gain_calibration;  // c * S_RX, m^2; default (lambda / (4 pi))^2
  std::optional<double> element_area;      // A, m^2; default (lambda / 2)^2
  double rician_k = 10.0;
  AvgDistancePolicy avg_distance_policy = AvgDistancePolicy::mean_pairwise;
  double avg_distance = 0.0;  // m, used when the policy is `fixed`

  double rx_aperture_m2() const { return rx_aperture.value_or(wavelength * wavelength / 4.0); }
  double calibration() const {
    const double v = wavelength / (4.0 * std::numbers::pi);
    return gain_calibration.value_or(v * v);
  }
  double element_area_m2() const {
    return element_area.value_or(0.25 * wavelength * wavelength);
  }

  void validate() const {
    detail::require(total_tx_power > 0.0 && std::isfinite(total_tx_power),
                    "transmit power must be positive");
    detail::require(wavelength > 0.0 && std::isfinite(wavelength), "wavelength must be positive");
    detail::require(rx_aperture_m2() > 0.0, "receiver aperture must be positive");
    detail::require(calibration() > 0.0, "gain calibration must be positive");
    detail::require(element_area_m2() >= 0.0, "element area must be nonnegative");
    detail::require(rician_k >= 0.0, "Rician K-factor must be nonnegative");
    if (avg_distance_policy == AvgDistancePolicy::fixed) {
      detail::require(avg_distance > 0.0, "fixed average distance must be positive");
    }
  }
};

// sinc(x) = sin(pi x) / (pi x), sinc(0) = 1.
inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

using CorrelationMatrix = Eigen::MatrixXd;

// Spatial correlation of isotropic scattering between ceiling elements:
// R_ij = sinc(2 d_ij / lambda).
inline CorrelationMatrix correlation_matrix(const LatticeGrid& tx_grid, double wavelength) {
  detail::require(wavelength > 0.0, "wavelength must be positive");
  const auto n = static_cast<Eigen::Index>(tx_grid.size());
  CorrelationMatrix r(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = 1.0;
    const Point2 b = tx_grid.positions[static_cast<std::size_t>(j)];
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Point2 a = tx_grid.positions[static_cast<std::size_t>(i)];
      const double d = std::hypot(a.x - b.x, a.z - b.z);
      r(i, j) = r(j, i) = sinc(2.0 * d / wavelength);
    }
  }
  return r;
}

// Mean Euclidean distance over all (transmit, receiver) pairs.
inline double mean_pair_distance(const LatticeGrid& tx_grid, const LatticeGrid& rx_grid) {
  detail::require(!tx_grid.empty() && !rx_grid.empty(), "grids must be nonempty");
  double sum = 0.0;
  for (std::size_t r = 0; r < rx_grid.size(); ++r) {
    const Point3 p = rx_grid.point3(r);
    double row = 0.0;
    for (const Point2& a : tx_grid.positions) row += distance(a, p);
    sum += row;
  }
  return sum / (static_cast<double>(tx_grid.size()) * static_cast<double>(rx_grid.size()));
}

// Per-realization generator: SplitMix64 mixing of (seed, index) seeds a
// Mersenne twister, so every realization can be drawn independently.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 realization_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL)));
}

// Draws zero-mean circularly symmetric complex Gaussian vectors with
// covariance R. R is factored once through a symmetric eigendecomposition;
// eigenvalues below clip * max eigenvalue are dropped because the sinc
// kernel is numerically rank deficient.
class CorrelatedGaussianSampler {
 public:
  explicit CorrelatedGaussianSampler(const CorrelationMatrix& r, double clip = 1e-10) {
    detail::require(r.rows() == r.cols() && r.rows() > 0, "correlation matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
    if (eig.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition of the correlation matrix failed");
    }
    const Eigen::VectorXd& values = eig.eigenvalues();
    const double top = values.maxCoeff();
    if (!(top > 0.0)) throw NumericalError("correlation matrix has no positive eigenvalue");
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      if (values(k) >= clip * top) kept.push_back(k);
    }
    factor_.resize(r.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
      const auto k = kept[j];
      factor_.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(k) * std::sqrt(values(k));
    }
  }

  Eigen::Index dimension() const { return factor_.rows(); }
  Eigen::Index rank() const { return factor_.cols(); }
  const Eigen::MatrixXd& factor() const { return factor_; }

  // `count` independent draws, one per column.
  template <class Rng>
  Eigen::MatrixXcd draw(Rng& rng, Eigen::Index count = 1) const {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXd re(rank(), count);
    Eigen::MatrixXd im(rank(), count);
    for (Eigen::Index c = 0; c < count; ++c) {
      for (Eigen::Index k = 0; k < rank(); ++k) {
        re(k, c) = normal(rng);
        im(k, c) = normal(rng);
      }
    }
    Eigen::MatrixXcd out(dimension(), count);
    out.real() = factor_ * re;
    out.imag() = factor_ * im;
    return out;
  }

 private:
  Eigen::MatrixXd factor_;
};

struct FadingRealization {
  GainMatrix faded_gains;  // |g~|^2 / c
  std::uint64_t seed = 0;
  bool shared_nlos = true;
};

// Average transmitter-receiver distance used to scale the scattered power.
inline double average_distance(const GainMatrix& base, const PhysicalParams& params) {
  if (params.avg_distance_policy == AvgDistancePolicy::fixed) return params.avg_distance;
  return mean_pair_distance(base.tx_grid, base.rx_grid);
}

// Rician realization of a line-of-sight gain matrix. The LoS channel
// g / sqrt(c) = exp(-j 2 pi D / lambda) / D is rebuilt from the grids, the
// scattered part h / sqrt(c) ~ CN(0, (A / avg_distance^2) R) is drawn from
// `sampler`, and the normalized power |sqrt(k/(k+1)) g + sqrt(1/(k+1)) h|^2 / c
// is returned. With shared_nlos one h is used for every receiver.
inline FadingRealization sample_rician_gains(const GainMatrix& base, const PhysicalParams& params,
                                             std::uint64_t seed, std::uint64_t index,
                                             bool shared_nlos,
                                             const CorrelatedGaussianSampler& sampler,
                                             double avg_distance) {
  detail::require(base.has_grids(), "fading needs the grids of the line-of-sight gains");
  detail::require(params.rician_k >= 0.0, "Rician K-factor must be nonnegative");
  detail::require(sampler.dimension() == base.cols(), "sampler dimension must match transmit grid");
  detail::require(avg_distance > 0.0, "average distance must be positive");
  FadingRealization out;
  out.seed = seed;
  out.shared_nlos = shared_nlos;
  out.faded_gains.rx_grid = base.rx_grid;
  out.faded_gains.tx_grid = base.tx_grid;
  if (std::isinf(params.rician_k)) {
    out.faded_gains.entries = base.entries;
    return out;
  }
  // A realization breaks the mirror symmetry of the line-of-sight gains.
  out.faded_gains.rx_grid.mirror_x = out.faded_gains.rx_grid.mirror_z = false;
  out.faded_gains.tx_grid.mirror_x = out.faded_gains.tx_grid.mirror_z = false;
  const double k = params.rician_k;
  const double los_weight = std::sqrt(k / (k + 1.0));
  const double nlos_weight =
      std::sqrt(1.0 / (k + 1.0)) * std::sqrt(params.element_area_m2()) / avg_distance;
  const double wavenumber = 2.0 * std::numbers::pi / params.wavelength;

  auto rng = realization_rng(seed, index);
  const Eigen::Index nr = base.rows();
  const Eigen::Index nt = base.cols();
  const Eigen::MatrixXcd h = sampler.draw(rng, shared_nlos ? 1 : nr);
  out.faded_gains.entries.resize(nr, nt);
  for (Eigen::Index t = 0; t < nt; ++t) {
    const Point2 a = base.tx_grid.positions[static_cast<std::size_t>(t)];
    for (Eigen::Index r = 0; r < nr; ++r) {
      const double d = distance(a, base.rx_grid.point3(static_cast<std::size_t>(r)));
      const std::complex<double> los = std::polar(1.0 / d, -wavenumber * d);
      const std::complex<double> nlos = h(t, shared_nlos ? 0 : r);
      out.faded_gains.entries(r, t) = std::norm(los_weight * los + nlos_weight * nlos);
    }
  }
  return out;
}

// Convenience overload that factors the correlation matrix on every call.
inline FadingRealization sample_rician_gains(const GainMatrix& base, const PhysicalParams& params,
                                             std::uint64_t seed, bool shared_nlos) {
  const CorrelatedGaussianSampler sampler(correlation_matrix(base.tx_grid, params.wavelength));
  return sample_rician_gains(base, params, seed, 0, shared_nlos, sampler,
                             average_distance(base, params));
}

}  // namespace wpt

#endif  // WPT_CHANNEL_HPP
