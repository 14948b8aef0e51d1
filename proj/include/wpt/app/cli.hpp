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


#ifndef WPT_APP_CLI_HPP
#define WPT_APP_CLI_HPP

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpt/app/config.hpp"
#include "wpt/certificate.hpp"
#include "wpt/error.hpp"
#include "wpt/experiments.hpp"
#include "wpt/schemes.hpp"
#include "wpt/solver.hpp"

namespace wpt::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,
  exit_solver = 3,
  exit_certificate = 4,
  exit_io = 5,
};

inline constexpr const char* output_root_variable = "WPT_OUTPUT_ROOT";

// Four significant digits, unpadded exponent: 1.649e-6.
inline std::string short_sci(double v) {
  if (v == 0.0 || !std::isfinite(v)) return format_number(v);
  int e = static_cast<int>(std::floor(std::log10(std::abs(v))));
  double m = std::round(v / std::pow(10.0, e) * 1000.0) / 1000.0;
  if (std::abs(m) >= 10.0) {
    m /= 10.0;
    ++e;
  }
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << m << 'e' << e;
  return os.str();
}

// Command-line values; each one that is set replaces the config file value.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> env;
  std::vector<double> room;
  std::optional<std::string> dim;
  std::optional<double> extent_x, extent_z;
  std::optional<int> lod, rx_lod;
  std::vector<int> lods;
  std::vector<std::string> envs;
  std::vector<std::string> schemes;
  std::optional<double> power, wavelength, element_area, calibration;
  std::optional<std::string> kappa;
  std::optional<int> realizations, threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> tol;
  std::optional<std::string> out;
  bool json_summary = false;
};

inline RunConfig resolve_config(const std::string& experiment, const Overrides& o) {
  RunConfig c = o.config_path ? load_config(*o.config_path) : RunConfig{};
  c.experiment = experiment;
  if (o.env) {
    c.env = *o.env;
    c.room.reset();
  }
  if (!o.room.empty()) {
    if (o.room.size() != 3) throw ConfigError("--room takes three values LX,LY,LZ");
    c.room = RoomGeometry{o.room[0], o.room[1], o.room[2]};
  }
  if (o.dim) c.dimensionality = detail::parse_dimensionality(*o.dim);
  if (o.extent_x) c.extent_x = o.extent_x;
  if (o.extent_z) c.extent_z = o.extent_z;
  if (o.lod) c.lod = o.lod;
  if (o.rx_lod) c.rx_lod = o.rx_lod;
  if (!o.lods.empty()) c.lods = o.lods;
  if (!o.envs.empty()) c.envs = o.envs;
  if (!o.schemes.empty()) {
    c.schemes.clear();
    for (const auto& s : o.schemes) {
      const auto id = parse_scheme(s);
      if (!id) throw ConfigError("unknown scheme '" + s + "'");
      c.schemes.push_back(*id);
    }
  }
  if (o.power) c.physical.total_tx_power = *o.power;
  if (o.wavelength) c.physical.wavelength = *o.wavelength;
  if (o.element_area) c.physical.element_area = o.element_area;
  if (o.calibration) c.physical.gain_calibration = o.calibration;
  if (o.kappa) {
    if (*o.kappa == "inf" || *o.kappa == "infinity") {
      c.physical.rician_k = std::numeric_limits<double>::infinity();
    } else {
      try {
        c.physical.rician_k = std::stod(*o.kappa);
      } catch (const std::exception&) {
        throw ConfigError("--kappa must be a number or 'inf'");
      }
    }
  }
  if (o.realizations) c.realizations = *o.realizations;
  if (o.threads) c.threads = *o.threads;
  if (o.seed) c.seed = *o.seed;
  if (o.mode) c.shared_nlos = detail::parse_mode(*o.mode);
  if (o.tol) c.tolerances.solve = *o.tol;
  if (o.out) c.output_dir = *o.out;
  c.validate();
  return c;
}

inline std::filesystem::path output_root() {
  const char* v = std::getenv(output_root_variable);
  return (v != nullptr && *v != '\0') ? std::filesystem::path(v) : std::filesystem::path("wpt_output");
}

struct Summary {
  nlohmann::json fields;
  std::vector<std::string> lines;
  int exit_code = exit_ok;
};

namespace detail {

inline void write_echo(const std::filesystem::path& dir, const RunConfig& c) {
  const auto path = dir / "config.json";
  std::ofstream out = wpt::detail::open_output(path);
  out << config_to_json(c).dump(2) << '\n';
  wpt::detail::close_output(out, path);
}

inline std::string verdict(bool passed) { return passed ? "PASS" : "FAIL"; }

inline Instance instance_for(const RunConfig& c) {
  const RoomGeometry room = c.effective_room();
  return make_instance(room, c.layout_for(room), c.rx_lod);
}

inline HeatmapMeta heatmap_meta(const RunConfig& c, const Instance& inst, std::string scheme, double m,
                                double watts) {
  return {c.env_label(), inst.room, inst.layout.lod, std::move(scheme), m, watts};
}

inline Summary run_solve(const RunConfig& c, const std::filesystem::path& dir) {
  const Instance inst = instance_for(c);
  const SolveReport r = solve_and_certify(inst, c.physical, c.solve_options(), c.certificate_tolerances());
  const std::string env = c.env_label();
  {
    const auto path = dir / "report.csv";
    std::ofstream out = wpt::detail::open_output(path);
    out << "env,dimensionality,lod,objective_m,min_power_w,antennas,support_percent,duality_gap,certificate\n"
        << env << ',' << dimensionality_name(c.dimensionality) << ',' << inst.layout.lod << ','
        << format_number(r.solution.objective_m) << ',' << format_number(r.min_power_watts) << ','
        << r.structure.count << ',' << format_number(r.structure.support_percent) << ','
        << format_number(r.solution.stats.duality_gap) << ',' << verdict(r.certificate.passed) << '\n';
    wpt::detail::close_output(out, path);
  }
  emit_heatmap(r.solution.allocation, inst.gains.tx_grid, dir / ("heatmap_" + env + ".csv"),
               heatmap_meta(c, inst, "M-OPT", r.solution.objective_m, r.min_power_watts));
  write_certificate_csv(dir / ("certificate_" + env + ".csv"), r.certificate, r.structure, r.solution.stats);
  Summary s;
  s.fields = {{"env", env},
              {"lod", inst.layout.lod},
              {"antennas", r.structure.count},
              {"objective_m", r.solution.objective_m},
              {"min_power_w", r.min_power_watts},
              {"duality_gap", r.solution.stats.duality_gap},
              {"certificate", verdict(r.certificate.passed)},
              {"seconds", r.seconds}};
  s.lines.push_back("antennas: " + std::to_string(r.structure.count) + ", min power: " +
                    short_sci(r.min_power_watts) + " W, certificate: " + verdict(r.certificate.passed));
  if (!r.certificate.passed) s.exit_code = exit_certificate;
  return s;
}

inline Summary run_sweep(const RunConfig& c, const std::filesystem::path& dir) {
  const RoomGeometry room = c.effective_room();
  const LodSweepSeries series = run_lod_sweep(room, c.layout_for(room), c.lods, c.physical, c.solve_options(),
                                              c.certificate_tolerances());
  write_sweep_csv(dir / "report.csv", c.env_label(), series);
  Summary s;
  bool all_passed = true;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < series.lods.size(); ++i) {
    all_passed = all_passed && series.certified[i];
    rows.push_back({{"lod", series.lods[i]},
                    {"objective_m", series.objectives[i]},
                    {"antennas", series.antenna_counts[i]},
                    {"rel_diff_percent", std::isnan(series.rel_diffs[i]) ? nlohmann::json(nullptr)
                                                                          : nlohmann::json(series.rel_diffs[i])},
                    {"certificate", verdict(series.certified[i])}});
    std::string line = "lod " + std::to_string(series.lods[i]) + ": antennas: " +
                       std::to_string(series.antenna_counts[i]) + ", min power: " +
                       short_sci(series.min_power_watts[i]) + " W";
    if (!std::isnan(series.rel_diffs[i])) line += ", rel diff: " + format_number(series.rel_diffs[i]) + "%";
    s.lines.push_back(line);
  }
  s.lines.push_back("certificate: " + verdict(all_passed));
  s.fields = {{"env", c.env_label()}, {"series", rows}, {"certificate", verdict(all_passed)}};
  if (!all_passed) s.exit_code = exit_certificate;
  return s;
}

inline Summary run_compare(const RunConfig& c, const std::filesystem::path& dir) {
  std::vector<Environment> envs;
  for (const auto& id : c.envs) envs.push_back(*environment_preset(id));
  const ComparisonTable t = run_scheme_comparison(envs, c.dimensionality, c.effective_lod(), c.physical,
                                                  c.schemes, c.solve_options(), c.certificate_tolerances());
  write_comparison_csv(dir / "report.csv", t);
  bool all_passed = true;
  for (std::size_t e = 0; e < envs.size(); ++e) {
    const SolveReport& opt = t.optima[e];
    const Instance inst = make_instance(envs[e].room, full_ceiling(envs[e].room, c.dimensionality, c.effective_lod()));
    emit_heatmap(opt.solution.allocation, inst.gains.tx_grid, dir / ("heatmap_" + envs[e].id + ".csv"),
                 {envs[e].id, envs[e].room, inst.layout.lod, "M-OPT", opt.solution.objective_m,
                  opt.min_power_watts});
    write_certificate_csv(dir / ("certificate_" + envs[e].id + ".csv"), opt.certificate, opt.structure,
                          opt.solution.stats);
    all_passed = all_passed && opt.certificate.passed;
  }
  Summary s;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    rows.push_back({{"env", row.env},
                    {"scheme", scheme_name(row.result.scheme_id)},
                    {"min_power_w", row.result.min_power_watts},
                    {"loss_vs_opt", row.result.loss_vs_opt},
                    {"antennas", row.antennas}});
    std::ostringstream line;
    line << row.env << ' ' << scheme_name(row.result.scheme_id) << ": min power: "
         << short_sci(row.result.min_power_watts) << " W, loss: " << std::fixed << std::setprecision(4)
         << row.result.loss_vs_opt << ", antennas: " << row.antennas;
    s.lines.push_back(line.str());
  }
  s.lines.push_back("certificate: " + verdict(all_passed));
  s.fields = {{"rows", rows}, {"certificate", verdict(all_passed)}};
  if (!all_passed) s.exit_code = exit_certificate;
  return s;
}

inline Summary run_fading(const RunConfig& c, const std::filesystem::path& dir) {
  const RoomGeometry room = c.effective_room();
  FadingOptions fo;
  fo.realizations = c.realizations;
  fo.seed_base = c.seed;
  fo.shared_nlos = c.shared_nlos;
  fo.threads = c.threads;
  const FadingEnsembleReport r = run_fading_ensemble(room, c.layout_for(room), c.physical, fo, c.solve_options());
  write_fading_csv(dir / "report.csv", c.env_label(), r);
  write_realizations_csv(dir / "realizations.csv", r);
  Summary s;
  s.fields = {{"env", c.env_label()},
              {"lod", r.lod},
              {"realizations", r.realizations},
              {"mode", r.shared_nlos ? "shared" : "independent"},
              {"los_support_percent", r.los_support_percent},
              {"mean_support_percent", r.mean_support_fraction},
              {"support_cov_percent", r.support_cov},
              {"mean_relative_performance_percent", r.mean_relative_performance},
              {"performance_cov_percent", r.performance_cov}};
  std::ostringstream line;
  line << std::setprecision(4) << "realizations: " << r.realizations
       << ", relative performance: " << r.mean_relative_performance << "% (CoV " << r.performance_cov
       << "%), support: " << r.mean_support_fraction << "% (LoS " << r.los_support_percent << "%)";
  s.lines.push_back(line.str());
  return s;
}

inline Summary run_heatmap(const RunConfig& c, const std::filesystem::path& dir) {
  const Instance inst = instance_for(c);
  const SolveReport r = solve_and_certify(inst, c.physical, c.solve_options(), c.certificate_tolerances());
  const std::string env = c.env_label();
  Summary s;
  nlohmann::json files = nlohmann::json::array();
  for (const SchemeResult& sr : evaluate_schemes(r.solution, inst.gains, c.physical, c.schemes)) {
    const std::string name(scheme_name(sr.scheme_id));
    const std::string file = sr.scheme_id == SchemeId::m_opt ? "heatmap_" + env + ".csv"
                                                             : "heatmap_" + env + "_" + name + ".csv";
    emit_heatmap(sr.allocation, inst.gains.tx_grid, dir / file,
                 heatmap_meta(c, inst, name, (inst.gains.entries * sr.allocation.weights).minCoeff(),
                              sr.min_power_watts));
    files.push_back(file);
    s.lines.push_back(name + ": " + (dir / file).string() + ", antennas: " +
                      std::to_string(sr.allocation.nonzero_count()));
  }
  write_certificate_csv(dir / ("certificate_" + env + ".csv"), r.certificate, r.structure, r.solution.stats);
  s.fields = {{"env", env}, {"files", files}, {"certificate", verdict(r.certificate.passed)}};
  if (!r.certificate.passed) s.exit_code = exit_certificate;
  return s;
}

// Certificates of every requested scheme; fails unless all pass.
inline Summary run_certify(const RunConfig& c, const std::filesystem::path& dir) {
  const Instance inst = instance_for(c);
  const SolveReport r = solve_and_certify(inst, c.physical, c.solve_options(), c.certificate_tolerances());
  const std::string env = c.env_label();
  const auto path = dir / "report.csv";
  std::ofstream out = wpt::detail::open_output(path);
  out << "env,scheme,objective_m,fbar_max,max_fbar_excess,support_deviation,complementarity,"
         "symmetry_residual,certificate\n";
  Summary s;
  bool all_passed = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const SchemeResult& sr : evaluate_schemes(r.solution, inst.gains, c.physical, c.schemes)) {
    const OptimalityCertificate cert =
        sr.scheme_id == SchemeId::m_opt
            ? r.certificate
            : verify_optimality(sr.allocation, induced_duals(sr.allocation, inst.gains), inst.gains,
                                c.certificate_tolerances());
    const std::string name(scheme_name(sr.scheme_id));
    out << env << ',' << name << ',' << format_number(cert.objective_m) << ',' << format_number(cert.fbar_max)
        << ',' << format_number(cert.max_fbar_excess) << ',' << format_number(cert.support_deviation) << ','
        << format_number(cert.complementarity) << ',' << format_number(cert.symmetry_residual) << ','
        << verdict(cert.passed) << '\n';
    all_passed = all_passed && cert.passed;
    rows.push_back({{"scheme", name},
                    {"max_fbar_excess", cert.max_fbar_excess},
                    {"support_deviation", cert.support_deviation},
                    {"certificate", verdict(cert.passed)}});
    std::ostringstream line;
    line << name << ": certificate: " << verdict(cert.passed) << " (f_bar excess " << std::setprecision(3)
         << cert.max_fbar_excess << ", support deviation " << cert.support_deviation << ')';
    s.lines.push_back(line.str());
  }
  wpt::detail::close_output(out, path);
  write_certificate_csv(dir / ("certificate_" + env + ".csv"), r.certificate, r.structure, r.solution.stats);
  s.fields = {{"env", env}, {"schemes", rows}, {"certificate", verdict(all_passed)}};
  if (!all_passed) s.exit_code = exit_certificate;
  return s;
}

}  // namespace detail

inline Summary execute(const RunConfig& c) {
  const std::filesystem::path dir = output_root() / (c.output_dir.empty() ? c.experiment : c.output_dir);
  Summary s;
  if (c.experiment == "solve") s = detail::run_solve(c, dir);
  else if (c.experiment == "sweep") s = detail::run_sweep(c, dir);
  else if (c.experiment == "compare") s = detail::run_compare(c, dir);
  else if (c.experiment == "fading") s = detail::run_fading(c, dir);
  else if (c.experiment == "heatmap") s = detail::run_heatmap(c, dir);
  else s = detail::run_certify(c, dir);
  detail::write_echo(dir, c);
  s.fields["command"] = c.experiment;
  s.fields["output_dir"] = dir.string();
  return s;
}

namespace detail {

inline void add_common_options(CLI::App& sub, Overrides& o) {
  sub.add_option("-c,--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub.add_option("--env", o.env, "environment preset: 1-1, 1-3, 1-4, 1-5");
  sub.add_option("--room", o.room, "custom room LX,LY,LZ in metres")->delimiter(',')->expected(3);
  sub.add_option("--dim", o.dim, "array dimensionality: 1d or 2d");
  sub.add_option("--extent-x", o.extent_x, "array extent along x (m); default: full ceiling");
  sub.add_option("--extent-z", o.extent_z, "array extent along z (m); default: full ceiling");
  sub.add_option("--lod", o.lod, "samples per axis (default 81; fading 41)");
  sub.add_option("--rx-lod", o.rx_lod, "receiver samples per axis (default: --lod)");
  sub.add_option("--schemes", o.schemes, "schemes: M-OPT, M-FF, M-UNI, M-S75")->delimiter(',');
  sub.add_option("--power", o.power, "total transmit power (W)");
  sub.add_option("--wavelength", o.wavelength, "wavelength (m)");
  sub.add_option("--calibration", o.calibration, "gain calibration c*S_RX (m^2)");
  sub.add_option("--tol", o.tol, "relative duality-gap tolerance");
  sub.add_option("--out", o.out, "output directory below the output root");
  sub.add_flag("--json-summary", o.json_summary, "print the summary as one JSON object");
}

}  // namespace detail

// Parses the command line, runs the experiment and prints the summary.
// Returns one of the ExitCode values.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Optimal transmit antenna deployment for indoor wireless power transfer"};
  app.require_subcommand(1);
  Overrides o;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"solve", "solve one environment and certify the optimum"},
                      {"sweep", "objective and antenna count over a list of lods"},
                      {"compare", "M-OPT against the benchmark schemes"},
                      {"fading", "Rician fading ensemble"},
                      {"heatmap", "write power heatmaps of the requested schemes"},
                      {"certify", "optimality certificates of the requested schemes"}};
  std::vector<CLI::App*> commands;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    detail::add_common_options(*sub, o);
    commands.push_back(sub);
  }
  commands[1]->add_option("--lods", o.lods, "increasing list of lods")->delimiter(',');
  commands[2]->add_option("--envs", o.envs, "environment presets to compare")->delimiter(',');
  commands[3]->add_option("--kappa", o.kappa, "Rician K-factor, or inf");
  commands[3]->add_option("--element-area", o.element_area, "element area A (m^2)");
  commands[3]->add_option("--realizations", o.realizations, "number of realizations");
  commands[3]->add_option("--seed", o.seed, "seed of the realization stream");
  commands[3]->add_option("--mode", o.mode, "NLoS draws: shared or independent");
  commands[3]->add_option("--threads", o.threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }
  std::string experiment;
  for (auto* sub : commands) {
    if (sub->parsed()) experiment = sub->get_name();
  }

  auto fail = [&](int code, const std::string& kind, const std::string& what) {
    if (o.json_summary) {
      out << nlohmann::json{{"command", experiment}, {"error", kind}, {"message", what}, {"exit_code", code}}.dump()
          << '\n';
    } else {
      err << "wptopt: " << kind << ": " << what << '\n';
    }
    return code;
  };

  RunConfig config;
  try {
    config = resolve_config(experiment, o);
  } catch (const InvalidArgument& e) {
    return fail(exit_config, "config error", e.what());
  }
  try {
    Summary s = execute(config);
    s.fields["exit_code"] = s.exit_code;
    if (o.json_summary) {
      out << s.fields.dump() << '\n';
    } else {
      for (const auto& line : s.lines) out << line << '\n';
    }
    return s.exit_code;
  } catch (const IoError& e) {
    return fail(exit_io, "I/O error", e.what());
  } catch (const InvalidArgument& e) {
    return fail(exit_config, "config error", e.what());
  } catch (const SolverError& e) {
    return fail(exit_solver, "solver error", e.what());
  } catch (const NumericalError& e) {
    return fail(exit_solver, "numerical error", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(exit_io, "I/O error", e.what());
  }
}

}  // namespace wpt::app

#endif  // WPT_APP_CLI_HPP
