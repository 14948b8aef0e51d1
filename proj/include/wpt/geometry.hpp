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

#ifndef WPT_GEOMETRY_HPP
#define WPT_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wpt/error.hpp"

namespace wpt {

// Cuboid room. The transmit plane is the ceiling at y = 0 and the floor is at
// y = len_y; x and z span [-len/2, len/2].
struct RoomGeometry {
  double len_x = 0.0;
  double len_y = 0.0;  // height
  double len_z = 0.0;

  void validate() const {
    detail::require(len_x > 0.0 && len_y > 0.0 && len_z > 0.0 && std::isfinite(len_x) &&
                        std::isfinite(len_y) && std::isfinite(len_z),
                    "room dimensions must be finite and strictly positive");
  }
};

enum class Dimensionality { one_d, two_d };

// Transmit array footprint on the ceiling. `lod` is the number of samples per
// axis (level of discretisation).
struct ArrayLayout {
  Dimensionality dimensionality = Dimensionality::two_d;
  double extent_x = 0.0;
  double extent_z = 0.0;
  int lod = 81;

  void validate(const RoomGeometry& room) const {
    room.validate();
    detail::require(lod >= 1, "lod must be at least 1");
    detail::require(extent_x >= 0.0 && extent_x <= room.len_x,
                    "array extent along x must lie within the room");
    if (dimensionality == Dimensionality::two_d) {
      detail::require(extent_z >= 0.0 && extent_z <= room.len_z,
                      "array extent along z must lie within the room");
    }
  }
};

// Full-ceiling layout, as used for all the reference environments.
inline ArrayLayout full_ceiling(const RoomGeometry& room, Dimensionality dim, int lod) {
  return {dim, room.len_x, dim == Dimensionality::two_d ? room.len_z : 0.0, lod};
}

struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Regular lattice in a plane y = plane_y. Positions are stored row-major with
// rows along z and columns along x: index = iz * nx + ix.
struct LatticeGrid {
  std::vector<Point2> positions;
  double plane_y = 0.0;
  double spacing = 0.0;
  int nx = 0;
  int nz = 0;
  bool mirror_x = false;  // closed under x -> -x
  bool mirror_z = false;  // closed under z -> -z

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
  bool fully_symmetric() const { return mirror_x && mirror_z; }

  Point3 point3(std::size_t i) const { return {positions[i].x, plane_y, positions[i].z}; }

  // Index of the mirror image of point i under the sign flips (flip_x, flip_z).
  std::size_t mirror_index(std::size_t i, bool flip_x, bool flip_z) const {
    const auto ix = static_cast<int>(i % static_cast<std::size_t>(nx));
    const auto iz = static_cast<int>(i / static_cast<std::size_t>(nx));
    const int jx = flip_x ? nx - 1 - ix : ix;
    const int jz = flip_z ? nz - 1 - iz : iz;
    return static_cast<std::size_t>(jz) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(jx);
  }
};

// `count` samples spanning [-extent/2, extent/2], both endpoints included.
// The formula is antisymmetric in the index so mirrored samples negate exactly.
inline std::vector<double> symmetric_samples(double extent, int count) {
  std::vector<double> values(static_cast<std::size_t>(count), 0.0);
  if (count == 1) return values;
  const double half = 0.5 * extent;
  const double denom = static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    values[static_cast<std::size_t>(i)] = half * (2.0 * i - (count - 1)) / denom;
  }
  return values;
}

namespace detail {

inline LatticeGrid make_lattice(double extent_x, int nx, double extent_z, int nz, double plane_y) {
  const auto xs = symmetric_samples(extent_x, nx);
  const auto zs = symmetric_samples(extent_z, nz);
  LatticeGrid grid;
  grid.positions.reserve(xs.size() * zs.size());
  for (double z : zs) {
    for (double x : xs) grid.positions.push_back({x, z});
  }
  grid.plane_y = plane_y;
  grid.nx = nx;
  grid.nz = nz;
  if (nx >= 2) {
    grid.spacing = extent_x / (nx - 1);
  } else if (nz >= 2) {
    grid.spacing = extent_z / (nz - 1);
  }
  grid.mirror_x = true;
  grid.mirror_z = true;
  return grid;
}

}  // namespace detail

// Transmit lattice on the ceiling: lod x lod points for a planar array, lod
// points along the x-axis (z = 0) for a linear array.
inline LatticeGrid build_tx_grid(const ArrayLayout& layout, const RoomGeometry& room) {
  layout.validate(room);
  if (layout.dimensionality == Dimensionality::two_d) {
    return detail::make_lattice(layout.extent_x, layout.lod, layout.extent_z, layout.lod, 0.0);
  }
  return detail::make_lattice(layout.extent_x, layout.lod, 0.0, 1, 0.0);
}

// Receiver lattice on the floor y = len_y, where the received power is lowest
// for every lateral position.
inline LatticeGrid build_rx_grid(const RoomGeometry& room, int lod) {
  room.validate();
  detail::require(lod >= 1, "lod must be at least 1");
  return detail::make_lattice(room.len_x, lod, room.len_z, lod, room.len_y);
}

// Heights of the validation stack: a geometric sequence from max(min_height,
// 0.1 len_y) up to and including len_y.
inline std::vector<double> volume_heights(const RoomGeometry& room, double min_height,
                                          int levels = 5) {
  room.validate();
  detail::require(levels >= 1, "at least one height level is required");
  const double lo = std::max(min_height, 0.1 * room.len_y);
  detail::require(lo > 0.0 && lo <= room.len_y, "lowest height must lie in (0, len_y]");
  std::vector<double> heights(static_cast<std::size_t>(levels), room.len_y);
  if (levels == 1) return heights;
  const double ratio = std::pow(room.len_y / lo, 1.0 / (levels - 1));
  for (int k = 0; k + 1 < levels; ++k) heights[static_cast<std::size_t>(k)] = lo * std::pow(ratio, k);
  return heights;
}

// Stack of receiver lattices at several heights for checking that the floor
// is the critical plane.
inline std::vector<LatticeGrid> build_rx_volume(const RoomGeometry& room, int lod,
                                                double min_height, int levels = 5) {
  detail::require(lod >= 1, "lod must be at least 1");
  std::vector<LatticeGrid> stack;
  for (double y : volume_heights(room, min_height, levels)) {
    stack.push_back(detail::make_lattice(room.len_x, lod, room.len_z, lod, y));
  }
  return stack;
}

struct NearFieldBounds {
  double d_fraunhofer = 0.0;  // 2 L^2 / lambda
  double d_fresnel = 0.0;     // cbrt(L_element^4 / (8 lambda)), reactive boundary
};

inline NearFieldBounds near_field_bounds(double aperture, double element_size, double wavelength) {
  detail::require(aperture > 0.0 && element_size > 0.0 && wavelength > 0.0,
                  "aperture, element size and wavelength must be positive");
  return {2.0 * aperture * aperture / wavelength,
          std::cbrt(std::pow(element_size, 4) / (8.0 * wavelength))};
}

inline double room_diagonal(const RoomGeometry& room) {
  return std::sqrt(room.len_x * room.len_x + room.len_y * room.len_y + room.len_z * room.len_z);
}

}  // namespace wpt

#endif  // WPT_GEOMETRY_HPP
