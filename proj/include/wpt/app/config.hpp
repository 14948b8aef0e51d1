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


#ifndef WPT_APP_CONFIG_HPP
#define WPT_APP_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpt/channel.hpp"
#include "wpt/error.hpp"
#include "wpt/experiments.hpp"
#include "wpt/geometry.hpp"
#include "wpt/schemes.hpp"

namespace wpt::app {

using nlohmann::json;

// Raised for malformed or invalid configuration.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"solve", "sweep", "compare", "fading", "heatmap", "certify"};
  return names;
}

struct Tolerances {
  double solve = 1e-9;    // relative duality gap
  double support = 1e-6;  // support threshold on weights
  double cert = 1e-6;     // certificate, relative
  double sym = 1e-6;      // mirror symmetry, absolute
};

struct RunConfig {
  std::string experiment = "solve";
  std::string env = "1-1";                 // preset; ignored when `room` is set
  std::optional<RoomGeometry> room;        // custom room
  std::vector<std::string> envs = {"1-1", "1-3", "1-4", "1-5"};  // compare
  Dimensionality dimensionality = Dimensionality::two_d;
  std::optional<double> extent_x;          // default: full ceiling
  std::optional<double> extent_z;
  std::optional<int> lod;                  // default 81, fading 41
  std::optional<int> rx_lod;               // default: lod
  std::vector<int> lods = {21, 41, 61, 81};  // sweep
  PhysicalParams physical;
  std::vector<SchemeId> schemes = {SchemeId::m_opt, SchemeId::m_ff, SchemeId::m_uni, SchemeId::m_s75};
  std::uint64_t seed = 20240601;
  int realizations = 200;
  bool shared_nlos = true;
  int threads = 1;
  std::string output_dir;                  // below the output root; default: experiment name
  Tolerances tolerances;

  int effective_lod() const { return lod.value_or(experiment == "fading" ? 41 : 81); }
  std::string env_label() const { return room ? std::string("custom") : env; }

  RoomGeometry effective_room() const {
    if (room) return *room;
    const auto preset = environment_preset(env);
    if (!preset) throw ConfigError("unknown environment '" + env + "' (expected 1-1, 1-3, 1-4 or 1-5)");
    return preset->room;
  }

  ArrayLayout layout_for(const RoomGeometry& r) const {
    ArrayLayout l = full_ceiling(r, dimensionality, effective_lod());
    if (extent_x) l.extent_x = *extent_x;
    if (extent_z && dimensionality == Dimensionality::two_d) l.extent_z = *extent_z;
    return l;
  }

  SolveOptions solve_options() const {
    SolveOptions o;
    o.tol = tolerances.solve;
    o.support_threshold = tolerances.support;
    return o;
  }

  CertificateTolerances certificate_tolerances() const { return {tolerances.cert, tolerances.sym}; }

  // Checks every precondition the experiments rely on, so a run either fails
  // here, before writing anything, or starts with a consistent configuration.
  void validate() const {
    try {
      bool known = false;
      for (const auto& n : experiment_names()) known = known || n == experiment;
      if (!known) throw ConfigError("unknown experiment '" + experiment + "'");
      const RoomGeometry r = effective_room();
      layout_for(r).validate(r);
      if (rx_lod) detail::require(*rx_lod >= 1, "rx_lod must be at least 1");
      physical.validate();
      if (experiment == "compare") {
        detail::require(!envs.empty(), "compare needs at least one environment");
        for (const auto& e : envs) {
          if (!environment_preset(e)) throw ConfigError("unknown environment '" + e + "'");
        }
      }
      if (experiment == "sweep") {
        detail::require(!lods.empty(), "sweep needs at least one lod");
        for (std::size_t i = 0; i < lods.size(); ++i) {
          detail::require(lods[i] >= 1, "sweep lods must be positive");
          if (i > 0) detail::require(lods[i] > lods[i - 1], "sweep lods must be strictly increasing");
        }
      }
      detail::require(!schemes.empty(), "at least one scheme is required");
      detail::require(realizations >= 2, "fading needs at least two realizations");
      detail::require(threads >= 0, "threads must be nonnegative");
      detail::require(tolerances.solve > 0.0 && tolerances.support >= 0.0 && tolerances.cert >= 0.0 &&
                          tolerances.sym >= 0.0,
                      "tolerances must be nonnegative (solve tolerance positive)");
      detail::require(output_dir.find("..") == std::string::npos, "output_dir must not leave the output root");
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
};

namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!keys.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
T get_as(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("invalid value for '" + key + "' in " + where);
  }
}

// Numbers, or "inf" for an unbounded K-factor.
inline double get_number(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (v.is_string() && (v == "inf" || v == "infinity")) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

inline json number_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

inline std::string dimensionality_name(Dimensionality d) { return d == Dimensionality::one_d ? "1d" : "2d"; }

inline Dimensionality parse_dimensionality(const std::string& s) {
  if (s == "1d" || s == "1D" || s == "one_d") return Dimensionality::one_d;
  if (s == "2d" || s == "2D" || s == "two_d") return Dimensionality::two_d;
  throw ConfigError("dimensionality must be '1d' or '2d', got '" + s + "'");
}

inline bool parse_mode(const std::string& s) {
  if (s == "shared") return true;
  if (s == "independent") return false;
  throw ConfigError("fading mode must be 'shared' or 'independent', got '" + s + "'");
}

}  // namespace detail

inline RunConfig config_from_json(const json& j) {
  using detail::get_as;
  using detail::get_number;
  detail::reject_unknown(j, {"experiment", "env", "room", "envs", "layout", "lods", "physical", "schemes",
                             "fading", "output_dir", "tolerances"},
                         "config");
  RunConfig c;
  if (j.contains("experiment")) c.experiment = get_as<std::string>(j, "experiment", "config");
  if (j.contains("env")) c.env = get_as<std::string>(j, "env", "config");
  if (j.contains("room")) {
    const json& r = j["room"];
    detail::reject_unknown(r, {"len_x", "len_y", "len_z"}, "room");
    for (const char* k : {"len_x", "len_y", "len_z"}) {
      if (!r.contains(k)) throw ConfigError(std::string("room is missing '") + k + "'");
    }
    c.room = RoomGeometry{get_number(r, "len_x", "room"), get_number(r, "len_y", "room"),
                          get_number(r, "len_z", "room")};
  }
  if (j.contains("envs")) c.envs = get_as<std::vector<std::string>>(j, "envs", "config");
  if (j.contains("layout")) {
    const json& l = j["layout"];
    detail::reject_unknown(l, {"dimensionality", "extent_x", "extent_z", "lod", "rx_lod"}, "layout");
    if (l.contains("dimensionality")) {
      c.dimensionality = detail::parse_dimensionality(get_as<std::string>(l, "dimensionality", "layout"));
    }
    if (l.contains("extent_x")) c.extent_x = get_number(l, "extent_x", "layout");
    if (l.contains("extent_z")) c.extent_z = get_number(l, "extent_z", "layout");
    if (l.contains("lod")) c.lod = get_as<int>(l, "lod", "layout");
    if (l.contains("rx_lod")) c.rx_lod = get_as<int>(l, "rx_lod", "layout");
  }
  if (j.contains("lods")) c.lods = get_as<std::vector<int>>(j, "lods", "config");
  if (j.contains("physical")) {
    const json& p = j["physical"];
    detail::reject_unknown(p, {"total_tx_power", "wavelength", "rx_aperture", "gain_calibration", "element_area",
                               "rician_k", "avg_distance_policy", "avg_distance"},
                           "physical");
    auto& ph = c.physical;
    if (p.contains("total_tx_power")) ph.total_tx_power = get_number(p, "total_tx_power", "physical");
    if (p.contains("wavelength")) ph.wavelength = get_number(p, "wavelength", "physical");
    if (p.contains("rx_aperture")) ph.rx_aperture = get_number(p, "rx_aperture", "physical");
    if (p.contains("gain_calibration")) ph.gain_calibration = get_number(p, "gain_calibration", "physical");
    if (p.contains("element_area")) ph.element_area = get_number(p, "element_area", "physical");
    if (p.contains("rician_k")) ph.rician_k = get_number(p, "rician_k", "physical");
    if (p.contains("avg_distance_policy")) {
      const auto s = get_as<std::string>(p, "avg_distance_policy", "physical");
      if (s == "mean_pairwise") ph.avg_distance_policy = AvgDistancePolicy::mean_pairwise;
      else if (s == "fixed") ph.avg_distance_policy = AvgDistancePolicy::fixed;
      else throw ConfigError("avg_distance_policy must be 'mean_pairwise' or 'fixed'");
    }
    if (p.contains("avg_distance")) ph.avg_distance = get_number(p, "avg_distance", "physical");
  }
  if (j.contains("schemes")) {
    c.schemes.clear();
    for (const auto& s : get_as<std::vector<std::string>>(j, "schemes", "config")) {
      const auto id = parse_scheme(s);
      if (!id) throw ConfigError("unknown scheme '" + s + "'");
      c.schemes.push_back(*id);
    }
  }
  if (j.contains("fading")) {
    const json& f = j["fading"];
    detail::reject_unknown(f, {"realizations", "seed", "mode", "threads"}, "fading");
    if (f.contains("realizations")) c.realizations = get_as<int>(f, "realizations", "fading");
    if (f.contains("seed")) c.seed = get_as<std::uint64_t>(f, "seed", "fading");
    if (f.contains("mode")) c.shared_nlos = detail::parse_mode(get_as<std::string>(f, "mode", "fading"));
    if (f.contains("threads")) c.threads = get_as<int>(f, "threads", "fading");
  }
  if (j.contains("output_dir")) c.output_dir = get_as<std::string>(j, "output_dir", "config");
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    detail::reject_unknown(t, {"solve", "support", "cert", "sym"}, "tolerances");
    if (t.contains("solve")) c.tolerances.solve = get_number(t, "solve", "tolerances");
    if (t.contains("support")) c.tolerances.support = get_number(t, "support", "tolerances");
    if (t.contains("cert")) c.tolerances.cert = get_number(t, "cert", "tolerances");
    if (t.contains("sym")) c.tolerances.sym = get_number(t, "sym", "tolerances");
  }
  return c;
}

// Complete description of a run; reading it back gives the same config.
inline json config_to_json(const RunConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["env"] = c.env;
  if (c.room) j["room"] = {{"len_x", c.room->len_x}, {"len_y", c.room->len_y}, {"len_z", c.room->len_z}};
  j["envs"] = c.envs;
  json layout = {{"dimensionality", detail::dimensionality_name(c.dimensionality)}, {"lod", c.effective_lod()}};
  if (c.extent_x) layout["extent_x"] = *c.extent_x;
  if (c.extent_z) layout["extent_z"] = *c.extent_z;
  if (c.rx_lod) layout["rx_lod"] = *c.rx_lod;
  j["layout"] = layout;
  j["lods"] = c.lods;
  const auto& p = c.physical;
  json phys = {{"total_tx_power", p.total_tx_power},
               {"wavelength", p.wavelength},
               {"rician_k", detail::number_json(p.rician_k)},
               {"avg_distance_policy", p.avg_distance_policy == AvgDistancePolicy::fixed ? "fixed" : "mean_pairwise"}};
  if (p.rx_aperture) phys["rx_aperture"] = *p.rx_aperture;
  if (p.gain_calibration) phys["gain_calibration"] = *p.gain_calibration;
  if (p.element_area) phys["element_area"] = *p.element_area;
  if (p.avg_distance_policy == AvgDistancePolicy::fixed) phys["avg_distance"] = p.avg_distance;
  j["physical"] = phys;
  json schemes = json::array();
  for (auto s : c.schemes) schemes.push_back(std::string(scheme_name(s)));
  j["schemes"] = schemes;
  j["fading"] = {{"realizations", c.realizations},
                 {"seed", c.seed},
                 {"mode", c.shared_nlos ? "shared" : "independent"},
                 {"threads", c.threads}};
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  j["tolerances"] = {{"solve", c.tolerances.solve},
                     {"support", c.tolerances.support},
                     {"cert", c.tolerances.cert},
                     {"sym", c.tolerances.sym}};
  return j;
}

inline RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return config_from_json(j);
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace wpt::app

#endif  // WPT_APP_CONFIG_HPP
