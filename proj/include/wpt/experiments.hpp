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


#ifndef WPT_EXPERIMENTS_HPP
#define WPT_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "wpt/certificate.hpp"
#include "wpt/channel.hpp"
#include "wpt/error.hpp"
#include "wpt/geometry.hpp"
#include "wpt/schemes.hpp"
#include "wpt/solver.hpp"

namespace wpt {

// ---------------------------------------------------------------------------
// Reference environments: 2 m high rooms with square floors, named by their
// height-to-width ratio.

struct Environment {
  std::string id;
  RoomGeometry room;
};

inline std::vector<Environment> reference_environments() {
  return {{"1-1", {2.0, 2.0, 2.0}},
          {"1-3", {6.0, 2.0, 6.0}},
          {"1-4", {8.0, 2.0, 8.0}},
          {"1-5", {10.0, 2.0, 10.0}}};
}

inline std::optional<Environment> environment_preset(std::string_view id) {
  for (auto& env : reference_environments()) {
    if (env.id == id) return env;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Problem instances.

struct Instance {
  RoomGeometry room;
  ArrayLayout layout;
  GainMatrix gains;
};

// Transmit lattice from `layout`, receivers on the critical floor plane with
// `rx_lod` samples per axis (the transmit lod when not given).
inline Instance make_instance(const RoomGeometry& room, const ArrayLayout& layout,
                              std::optional<int> rx_lod = std::nullopt) {
  layout.validate(room);
  Instance inst;
  inst.room = room;
  inst.layout = layout;
  inst.gains = gain_matrix(build_tx_grid(layout, room), build_rx_grid(room, rx_lod.value_or(layout.lod)));
  return inst;
}

struct SolveReport {
  MaxMinSolution solution;
  OptimalityCertificate certificate;
  StructureReport structure;
  double min_power_watts = 0.0;
  double seconds = 0.0;
};

inline SolveReport solve_and_certify(const Instance& inst, const PhysicalParams& params,
                                     const SolveOptions& opt = {}, CertificateTolerances tol = {}) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport r;
  r.solution = solve_maxmin(inst.gains, opt);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.certificate = verify_optimality(r.solution, inst.gains, tol);
  r.structure = check_structure(r.solution.allocation, inst.gains.tx_grid, opt.support_threshold);
  r.min_power_watts = evaluate_min_power(r.solution.allocation, inst.gains, params);
  return r;
}

// Largest relative gap between the minimum received gain over a stack of
// receiver planes below the critical plane and the critical-plane minimum.
// The critical plane is the floor, so the two agree for any allocation.
inline double volume_check(const Instance& inst, const PowerAllocation& allocation, int levels = 5,
                           double wavelength = PhysicalParams{}.wavelength) {
  // Reactive near-field boundary of a lambda-sized element.
  const double min_height = near_field_bounds(wavelength, wavelength, wavelength).d_fresnel;
  const LatticeGrid& plane = inst.gains.rx_grid;
  detail::require(plane.nx == plane.nz, "volume check needs a square receiver lattice");
  const auto stack = build_rx_volume(inst.room, plane.nx, min_height, levels);
  const double plane_min = (inst.gains.entries * allocation.weights).minCoeff();
  double stack_min = std::numeric_limits<double>::infinity();
  for (const auto& g : gain_matrices(inst.gains.tx_grid, stack)) {
    stack_min = std::min(stack_min, (g.entries * allocation.weights).minCoeff());
  }
  return std::abs(stack_min - plane_min) / plane_min;
}

// ---------------------------------------------------------------------------
// Level-of-discretisation sweep.

struct LodSweepSeries {
  std::vector<int> lods;
  std::vector<double> objectives;      // m per lod
  std::vector<double> min_power_watts;
  std::vector<double> rel_diffs;       // percent; NaN for the first lod
  std::vector<std::size_t> antenna_counts;
  std::vector<bool> certified;
};

inline LodSweepSeries run_lod_sweep(const RoomGeometry& room, const ArrayLayout& base,
                                    const std::vector<int>& lods, const PhysicalParams& params,
                                    const SolveOptions& opt = {}, CertificateTolerances tol = {}) {
  detail::require(!lods.empty(), "sweep needs at least one lod");
  for (std::size_t i = 1; i < lods.size(); ++i) {
    detail::require(lods[i] > lods[i - 1], "sweep lods must be strictly increasing");
  }
  LodSweepSeries s;
  for (int lod : lods) {
    ArrayLayout layout = base;
    layout.lod = lod;
    const SolveReport r = solve_and_certify(make_instance(room, layout), params, opt, tol);
    const double m = r.solution.objective_m;
    s.rel_diffs.push_back(s.objectives.empty() ? std::numeric_limits<double>::quiet_NaN()
                                               : std::abs(m - s.objectives.back()) / m * 100.0);
    s.lods.push_back(lod);
    s.objectives.push_back(m);
    s.min_power_watts.push_back(r.min_power_watts);
    s.antenna_counts.push_back(r.structure.count);
    s.certified.push_back(r.certificate.passed);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Scheme comparison.

struct ComparisonRow {
  std::string env;
  SchemeResult result;
  OptimalityCertificate certificate;  // of the scheme's allocation
  std::size_t antennas = 0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::vector<SolveReport> optima;  // one per environment, in input order
};

inline ComparisonTable run_scheme_comparison(const std::vector<Environment>& envs,
                                             Dimensionality dim, int lod,
                                             const PhysicalParams& params,
                                             const std::vector<SchemeId>& schemes,
                                             const SolveOptions& opt = {},
                                             CertificateTolerances tol = {}) {
  ComparisonTable t;
  for (const auto& env : envs) {
    const Instance inst = make_instance(env.room, full_ceiling(env.room, dim, lod));
    SolveReport opt_report = solve_and_certify(inst, params, opt, tol);
    for (SchemeResult& r : evaluate_schemes(opt_report.solution, inst.gains, params, schemes)) {
      ComparisonRow row;
      row.env = env.id;
      row.certificate = r.scheme_id == SchemeId::m_opt
                            ? opt_report.certificate
                            : verify_optimality(r.allocation, induced_duals(r.allocation, inst.gains),
                                                inst.gains, tol);
      row.antennas = r.allocation.nonzero_count();
      row.result = std::move(r);
      t.rows.push_back(std::move(row));
    }
    t.optima.push_back(std::move(opt_report));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Rician fading ensemble.

struct FadingOptions {
  int realizations = 200;
  std::uint64_t seed_base = 20240601;
  bool shared_nlos = true;
  int threads = 1;  // 0 picks the hardware concurrency
};

struct FadingEnsembleReport {
  int realizations = 0;
  int lod = 0;
  bool shared_nlos = true;
  std::uint64_t seed_base = 0;
  double rician_k = 0.0;
  double avg_distance = 0.0;
  std::size_t los_count = 0;
  double los_support_percent = 0.0;
  double mean_support_fraction = 0.0;      // percent of grid cells
  double support_cov = 0.0;                // percent
  double mean_relative_performance = 0.0;  // percent
  double performance_cov = 0.0;            // percent, of the per-realization ratio
  // Per realization, by index.
  std::vector<double> los_power;  // W, line-of-sight optimal allocation under fading
  std::vector<double> opt_power;  // W, re-optimized on the faded gains
  std::vector<std::size_t> counts;
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample standard deviation over mean, in percent.
inline double cov_percent(const std::vector<double>& v) {
  const double mean = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return 100.0 * std::sqrt(ss / static_cast<double>(v.size() - 1)) / mean;
}

}  // namespace detail

inline FadingEnsembleReport run_fading_ensemble(const RoomGeometry& room, const ArrayLayout& layout,
                                                const PhysicalParams& params,
                                                const FadingOptions& fo = {},
                                                const SolveOptions& opt = {}) {
  params.validate();
  detail::require(fo.realizations >= 2, "a fading ensemble needs at least two realizations");
  const Instance inst = make_instance(room, layout);
  const SolveReport los = solve_and_certify(inst, params, opt);
  const double cells = static_cast<double>(inst.gains.cols());

  FadingEnsembleReport rep;
  rep.realizations = fo.realizations;
  rep.lod = layout.lod;
  rep.shared_nlos = fo.shared_nlos;
  rep.seed_base = fo.seed_base;
  rep.rician_k = params.rician_k;
  rep.avg_distance = average_distance(inst.gains, params);
  rep.los_count = los.structure.count;
  rep.los_support_percent = los.structure.support_percent;
  const auto n = static_cast<std::size_t>(fo.realizations);
  rep.los_power.assign(n, 0.0);
  rep.opt_power.assign(n, 0.0);
  rep.counts.assign(n, 0);

  const CorrelatedGaussianSampler sampler(correlation_matrix(inst.gains.tx_grid, params.wavelength));
  auto run_one = [&](std::size_t i) {
    const FadingRealization f = sample_rician_gains(inst.gains, params, fo.seed_base, i, fo.shared_nlos,
                                                    sampler, rep.avg_distance);
    rep.los_power[i] = evaluate_min_power(los.solution.allocation, f.faded_gains, params);
    const MaxMinSolution sol = solve_maxmin(f.faded_gains, opt);
    rep.opt_power[i] = evaluate_min_power(sol.allocation, f.faded_gains, params);
    rep.counts[i] = sol.allocation.nonzero_count();
  };

  int threads = fo.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : fo.threads;
  threads = std::clamp(threads, 1, fo.realizations);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) run_one(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
          next = n;
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Ordered reduction by realization index.
  std::vector<double> fractions(n), ratios(n);
  for (std::size_t i = 0; i < n; ++i) {
    fractions[i] = 100.0 * static_cast<double>(rep.counts[i]) / cells;
    ratios[i] = rep.los_power[i] / rep.opt_power[i];
  }
  rep.mean_support_fraction = detail::mean_of(fractions);
  rep.support_cov = detail::cov_percent(fractions);
  rep.mean_relative_performance = 100.0 * detail::mean_of(rep.los_power) / detail::mean_of(rep.opt_power);
  rep.performance_cov = detail::cov_percent(ratios);
  return rep;
}

// ---------------------------------------------------------------------------
// Output files. Numbers carry 12 significant digits.

inline std::string format_number(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

inline void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

inline std::string json_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace detail

struct HeatmapMeta {
  std::string env;
  RoomGeometry room;
  int lod = 0;
  std::string scheme = "M-OPT";
  double objective_m = 0.0;
  double min_power_watts = 0.0;
};

// Grid-shaped CSV: one line per z index, one column per x index, each cell
// the percentage of the total power. A `<stem>.json` sidecar carries `meta`.
inline void emit_heatmap(const PowerAllocation& allocation, const LatticeGrid& tx_grid,
                         const std::filesystem::path& path, const HeatmapMeta& meta = {}) {
  detail::require(static_cast<std::size_t>(allocation.size()) == tx_grid.size(),
                  "allocation does not match the grid");
  std::ofstream out = detail::open_output(path);
  for (int iz = 0; iz < tx_grid.nz; ++iz) {
    for (int ix = 0; ix < tx_grid.nx; ++ix) {
      if (ix > 0) out << ',';
      out << format_number(100.0 * allocation.weights(iz * tx_grid.nx + ix));
    }
    out << '\n';
  }
  detail::close_output(out, path);

  std::filesystem::path side = path;
  side.replace_extension(".json");
  std::ofstream js = detail::open_output(side);
  js << "{\n"
     << "  \"env\": \"" << detail::json_escape(meta.env) << "\",\n"
     << "  \"room\": [" << format_number(meta.room.len_x) << ", " << format_number(meta.room.len_y)
     << ", " << format_number(meta.room.len_z) << "],\n"
     << "  \"lod\": " << meta.lod << ",\n"
     << "  \"nx\": " << tx_grid.nx << ",\n"
     << "  \"nz\": " << tx_grid.nz << ",\n"
     << "  \"scheme\": \"" << detail::json_escape(meta.scheme) << "\",\n"
     << "  \"objective_m\": " << format_number(meta.objective_m) << ",\n"
     << "  \"min_power_watts\": " << format_number(meta.min_power_watts) << ",\n"
     << "  \"nonzero\": " << allocation.nonzero_count() << "\n"
     << "}\n";
  detail::close_output(js, side);
}

inline void write_certificate_csv(const std::filesystem::path& path, const OptimalityCertificate& c,
                                  const StructureReport& s, const SolverStats& stats) {
  std::ofstream out = detail::open_output(path);
  out << "quantity,value\n"
      << "objective_m," << format_number(c.objective_m) << '\n'
      << "fbar_max," << format_number(c.fbar_max) << '\n'
      << "max_fbar_excess," << format_number(c.max_fbar_excess) << '\n'
      << "support_deviation," << format_number(c.support_deviation) << '\n'
      << "complementarity," << format_number(c.complementarity) << '\n'
      << "symmetry_residual," << format_number(c.symmetry_residual) << '\n'
      << "tol_cert," << format_number(c.tolerances.cert) << '\n'
      << "tol_sym," << format_number(c.tolerances.sym) << '\n'
      << "passed," << (c.passed ? "true" : "false") << '\n'
      << "antennas," << s.count << '\n'
      << "support_percent," << format_number(s.support_percent) << '\n'
      << "duality_gap," << format_number(stats.duality_gap) << '\n'
      << "ipm_iterations," << stats.ipm_iterations << '\n'
      << "working_rows," << stats.working_rows << '\n'
      << "symmetry_reduced," << (stats.reduced ? "true" : "false") << '\n';
  detail::close_output(out, path);
}

inline void write_sweep_csv(const std::filesystem::path& path, const std::string& env,
                            const LodSweepSeries& s) {
  std::ofstream out = detail::open_output(path);
  out << "env,lod,objective_m,min_power_w,rel_diff_percent,antennas,certified\n";
  for (std::size_t i = 0; i < s.lods.size(); ++i) {
    out << env << ',' << s.lods[i] << ',' << format_number(s.objectives[i]) << ','
        << format_number(s.min_power_watts[i]) << ',' << format_number(s.rel_diffs[i]) << ','
        << s.antenna_counts[i] << ',' << (s.certified[i] ? "true" : "false") << '\n';
  }
  detail::close_output(out, path);
}

inline void write_comparison_csv(const std::filesystem::path& path, const ComparisonTable& t) {
  std::ofstream out = detail::open_output(path);
  out << "env,scheme,min_power_w,loss_vs_opt,antennas,certificate\n";
  for (const auto& row : t.rows) {
    out << row.env << ',' << scheme_name(row.result.scheme_id) << ','
        << format_number(row.result.min_power_watts) << ',' << format_number(row.result.loss_vs_opt)
        << ',' << row.antennas << ',' << (row.certificate.passed ? "pass" : "fail") << '\n';
  }
  detail::close_output(out, path);
}

inline void write_fading_csv(const std::filesystem::path& path, const std::string& env,
                             const FadingEnsembleReport& r) {
  std::ofstream out = detail::open_output(path);
  out << "env,lod,realizations,mode,seed_base,rician_k,avg_distance_m,los_antennas,"
         "los_support_percent,mean_support_percent,support_cov_percent,"
         "mean_relative_performance_percent,performance_cov_percent\n"
      << env << ',' << r.lod << ',' << r.realizations << ','
      << (r.shared_nlos ? "shared" : "independent") << ',' << r.seed_base << ','
      << format_number(r.rician_k) << ',' << format_number(r.avg_distance) << ',' << r.los_count << ','
      << format_number(r.los_support_percent) << ',' << format_number(r.mean_support_fraction) << ','
      << format_number(r.support_cov) << ',' << format_number(r.mean_relative_performance) << ','
      << format_number(r.performance_cov) << '\n';
  detail::close_output(out, path);
}

inline void write_realizations_csv(const std::filesystem::path& path, const FadingEnsembleReport& r) {
  std::ofstream out = detail::open_output(path);
  out << "index,los_power_w,opt_power_w,antennas\n";
  for (std::size_t i = 0; i < r.counts.size(); ++i) {
    out << i << ',' << format_number(r.los_power[i]) << ',' << format_number(r.opt_power[i]) << ','
        << r.counts[i] << '\n';
  }
  detail::close_output(out, path);
}

}  // namespace wpt

#endif  // WPT_EXPERIMENTS_HPP
