// Copyright 2026 The pretc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pretc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pretc {

Profile parse_profile(const std::string& name) {
  if (name == "experiment") return Profile::kExperiment;
  if (name == "simulation") return Profile::kSimulation;
  throw std::invalid_argument("unknown profile: " + name);
}

std::string to_string(Profile profile) {
  return profile == Profile::kExperiment ? "experiment" : "simulation";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Parsed "key = value" file: section -> key -> raw value.
class KvFile {
 public:
  KvFile(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(lineno, "malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail(lineno, "empty key");
      if (!values_[section].emplace(key, value).second) {
        fail(lineno, "duplicate key '" + key + "'");
      }
    }
  }

  bool has(const std::string& section, const std::string& key) const {
    auto s = values_.find(section);
    return s != values_.end() && s->second.count(key) > 0;
  }

  std::string get(const std::string& section, const std::string& key) {
    consumed_[section].insert(key);
    return values_.at(section).at(key);
  }

  double get_double(const std::string& section, const std::string& key) {
    const std::string raw = get(section, key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(raw, &pos);
      if (trim(raw.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error(origin_ + ": [" + section + "] " + key +
                             ": expected a number, got '" + raw + "'");
  }

  int get_int(const std::string& section, const std::string& key) {
    const double v = get_double(section, key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9) {
      throw std::runtime_error(origin_ + ": [" + section + "] " + key +
                               ": expected an integer");
    }
    return i;
  }

  bool get_bool(const std::string& section, const std::string& key) {
    const std::string raw = get(section, key);
    if (raw == "on" || raw == "true" || raw == "1") return true;
    if (raw == "off" || raw == "false" || raw == "0") return false;
    throw std::runtime_error(origin_ + ": [" + section + "] " + key +
                             ": expected on/off");
  }

  std::vector<double> get_list(const std::string& section,
                               const std::string& key) {
    const std::string raw = get(section, key);
    std::vector<double> out;
    std::istringstream in(raw);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (!trim(item.substr(pos)).empty()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::runtime_error(origin_ + ": [" + section + "] " + key +
                                 ": bad list element '" + item + "'");
      }
    }
    return out;
  }

  // Every present key must have been consumed; catches typos early.
  void reject_unknown() const {
    for (const auto& [section, kv] : values_) {
      auto c = consumed_.find(section);
      for (const auto& [key, value] : kv) {
        if (c == consumed_.end() || c->second.count(key) == 0) {
          throw std::runtime_error(origin_ + ": unknown key [" + section +
                                   "] " + key);
        }
      }
    }
  }

 private:
  [[noreturn]] void fail(int lineno, const std::string& what) const {
    throw std::runtime_error(origin_ + ":" + std::to_string(lineno) + ": " +
                             what);
  }

  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> values_;
  mutable std::map<std::string, std::set<std::string>> consumed_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

ScenarioConfig ScenarioConfig::parse(const std::string& text,
                                     const std::string& origin) {
  KvFile kv(text, origin);
  ScenarioConfig cfg;

  if (kv.has("scenario", "mode")) {
    cfg.mode = parse_controller_mode(kv.get("scenario", "mode"));
  }
  if (kv.has("scenario", "profile")) {
    cfg.profile = parse_profile(kv.get("scenario", "profile"));
  }
  // Profile presets first; explicit keys below override them.
  if (cfg.profile == Profile::kExperiment) {
    cfg.ctrl_ts_s = 0.025;
    cfg.ctrl_n_steps = 10;
  } else {
    cfg.ctrl_ts_s = 0.005;
    cfg.ctrl_n_steps = 50;
  }
  if (kv.has("scenario", "duration_s")) {
    cfg.duration_s = kv.get_double("scenario", "duration_s");
  }
  if (kv.has("scenario", "demand_nm")) {
    cfg.demand_nm = kv.get_double("scenario", "demand_nm");
  }
  if (kv.has("scenario", "map_file")) cfg.map_file = kv.get("scenario", "map_file");
  if (kv.has("scenario", "map_high_mu")) {
    cfg.map_high_mu = kv.get_double("scenario", "map_high_mu");
  }
  if (kv.has("scenario", "map_low_mu")) {
    cfg.map_low_mu = kv.get_double("scenario", "map_low_mu");
  }
  if (kv.has("scenario", "map_step_m")) {
    cfg.map_step_m = kv.get_double("scenario", "map_step_m");
  }
  if (kv.has("scenario", "rmse_window")) {
    cfg.rmse_window = kv.get("scenario", "rmse_window");
  }
  if (kv.has("scenario", "timing")) cfg.timing = kv.get_bool("scenario", "timing");
  if (kv.has("scenario", "out_dir")) cfg.out_dir = kv.get("scenario", "out_dir");

  if (kv.has("controller", "ts_ms")) {
    cfg.ctrl_ts_s = kv.get_double("controller", "ts_ms") * 1e-3;
  }
  if (kv.has("controller", "n_steps")) {
    cfg.ctrl_n_steps = kv.get_int("controller", "n_steps");
  }
  if (kv.has("controller", "substep_ms")) {
    cfg.ctrl_substep_s = kv.get_double("controller", "substep_ms") * 1e-3;
  }
  if (kv.has("controller", "tau_ms")) {
    cfg.ctrl_tau_s = kv.get_double("controller", "tau_ms") * 1e-3;
  }
  if (kv.has("controller", "delay_comp_ms")) {
    cfg.ctrl_delay_comp_s = kv.get_double("controller", "delay_comp_ms") * 1e-3;
  }
  if (kv.has("controller", "w_slack")) {
    cfg.w_slack = kv.get_double("controller", "w_slack");
  }
  if (kv.has("controller", "w_torque")) {
    cfg.w_torque = kv.get_double("controller", "w_torque");
  }
  if (kv.has("controller", "w_eint")) {
    cfg.w_eint = kv.get_double("controller", "w_eint");
  }
  if (kv.has("controller", "lm_damping")) {
    cfg.lm_damping = kv.get_double("controller", "lm_damping");
  }
  if (kv.has("controller", "eint_antiwindup")) {
    cfg.eint_antiwindup = kv.get_bool("controller", "eint_antiwindup");
  }
  if (kv.has("controller", "eint_limit")) {
    cfg.eint_limit_s = kv.get_double("controller", "eint_limit");
  }

  if (kv.has("vehicle", "mass_kg")) {
    cfg.vehicle.mass_kg = kv.get_double("vehicle", "mass_kg");
  }
  if (kv.has("vehicle", "wheel_radius_m")) {
    cfg.vehicle.wheel_radius_m = kv.get_double("vehicle", "wheel_radius_m");
  }
  if (kv.has("vehicle", "wheel_inertia")) {
    cfg.vehicle.wheel_inertia = kv.get_double("vehicle", "wheel_inertia");
  }
  if (kv.has("vehicle", "gear_ratio")) {
    cfg.vehicle.gear_ratio = kv.get_double("vehicle", "gear_ratio");
  }
  if (kv.has("vehicle", "fz_fl_n")) {
    cfg.vehicle.fz_fl_n = kv.get_double("vehicle", "fz_fl_n");
  }
  if (kv.has("vehicle", "fz_fr_n")) {
    cfg.vehicle.fz_fr_n = kv.get_double("vehicle", "fz_fr_n");
  }
  if (kv.has("vehicle", "torque_max_nm")) {
    cfg.vehicle.torque_max_nm = kv.get_double("vehicle", "torque_max_nm");
  }
  if (kv.has("vehicle", "power_max_w")) {
    cfg.vehicle.power_max_w = kv.get_double("vehicle", "power_max_w");
  }
  if (kv.has("vehicle", "slip_eps_mps")) {
    cfg.vehicle.slip_speed_eps = kv.get_double("vehicle", "slip_eps_mps");
  }

  if (kv.has("tire", "b0")) cfg.tire.b0 = kv.get_double("tire", "b0");
  if (kv.has("tire", "c0")) cfg.tire.c0 = kv.get_double("tire", "c0");
  if (kv.has("tire", "d0")) cfg.tire.d0 = kv.get_double("tire", "d0");

  if (kv.has("plant", "tau_ms")) {
    cfg.plant_tau_s = kv.get_double("plant", "tau_ms") * 1e-3;
  }
  if (kv.has("plant", "delay_ms")) {
    cfg.plant_delay_s = kv.get_double("plant", "delay_ms") * 1e-3;
  }
  if (kv.has("plant", "dt_ms")) {
    cfg.plant_dt_s = kv.get_double("plant", "dt_ms") * 1e-3;
  }
  if (kv.has("plant", "rolling_resistance")) {
    cfg.rolling_resistance = kv.get_double("plant", "rolling_resistance");
  }

  if (kv.has("sweep", "tau_ms")) {
    cfg.sweep_tau_s.clear();
    for (double v : kv.get_list("sweep", "tau_ms")) {
      cfg.sweep_tau_s.push_back(v * 1e-3);
    }
  }
  if (kv.has("sweep", "delay_ms")) {
    cfg.sweep_delay_s.clear();
    for (double v : kv.get_list("sweep", "delay_ms")) {
      cfg.sweep_delay_s.push_back(v * 1e-3);
    }
  }

  kv.reject_unknown();
  cfg.validate();
  return cfg;
}

std::string ScenarioConfig::to_text() const {
  std::ostringstream out;
  out << "[scenario]\n";
  out << "mode = " << to_string(mode) << "\n";
  out << "profile = " << to_string(profile) << "\n";
  out << "duration_s = " << fmt(duration_s) << "\n";
  out << "demand_nm = " << fmt(demand_nm) << "\n";
  if (!map_file.empty()) out << "map_file = " << map_file << "\n";
  out << "map_high_mu = " << fmt(map_high_mu) << "\n";
  out << "map_low_mu = " << fmt(map_low_mu) << "\n";
  out << "map_step_m = " << fmt(map_step_m) << "\n";
  out << "rmse_window = " << rmse_window << "\n";
  out << "timing = " << (timing ? "on" : "off") << "\n";
  out << "out_dir = " << out_dir << "\n";
  out << "\n[controller]\n";
  out << "ts_ms = " << fmt(ctrl_ts_s * 1e3) << "\n";
  out << "n_steps = " << ctrl_n_steps << "\n";
  out << "substep_ms = " << fmt(ctrl_substep_s * 1e3) << "\n";
  out << "tau_ms = " << fmt(ctrl_tau_s * 1e3) << "\n";
  out << "delay_comp_ms = " << fmt(ctrl_delay_comp_s * 1e3) << "\n";
  out << "w_slack = " << fmt(w_slack) << "\n";
  out << "w_torque = " << fmt(w_torque) << "\n";
  out << "w_eint = " << fmt(w_eint) << "\n";
  out << "lm_damping = " << fmt(lm_damping) << "\n";
  out << "eint_antiwindup = " << (eint_antiwindup ? "on" : "off") << "\n";
  out << "eint_limit = " << fmt(eint_limit_s) << "\n";
  out << "\n[vehicle]\n";
  out << "mass_kg = " << fmt(vehicle.mass_kg) << "\n";
  out << "wheel_radius_m = " << fmt(vehicle.wheel_radius_m) << "\n";
  out << "wheel_inertia = " << fmt(vehicle.wheel_inertia) << "\n";
  out << "gear_ratio = " << fmt(vehicle.gear_ratio) << "\n";
  out << "fz_fl_n = " << fmt(vehicle.fz_fl_n) << "\n";
  out << "fz_fr_n = " << fmt(vehicle.fz_fr_n) << "\n";
  out << "torque_max_nm = " << fmt(vehicle.torque_max_nm) << "\n";
  out << "power_max_w = " << fmt(vehicle.power_max_w) << "\n";
  out << "slip_eps_mps = " << fmt(vehicle.slip_speed_eps) << "\n";
  out << "\n[tire]\n";
  out << "b0 = " << fmt(tire.b0) << "\n";
  out << "c0 = " << fmt(tire.c0) << "\n";
  out << "d0 = " << fmt(tire.d0) << "\n";
  out << "\n[plant]\n";
  out << "tau_ms = " << fmt(plant_tau_s * 1e3) << "\n";
  out << "delay_ms = " << fmt(plant_delay_s * 1e3) << "\n";
  out << "dt_ms = " << fmt(plant_dt_s * 1e3) << "\n";
  out << "rolling_resistance = " << fmt(rolling_resistance) << "\n";
  out << "\n[sweep]\n";
  out << "tau_ms = ";
  for (std::size_t i = 0; i < sweep_tau_s.size(); ++i) {
    out << (i ? ", " : "") << fmt(sweep_tau_s[i] * 1e3);
  }
  out << "\ndelay_ms = ";
  for (std::size_t i = 0; i < sweep_delay_s.size(); ++i) {
    out << (i ? ", " : "") << fmt(sweep_delay_s[i] * 1e3);
  }
  out << "\n";
  return out.str();
}

void ScenarioConfig::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("config: cannot write " + path);
  out << to_text();
}

void ScenarioConfig::validate() const {
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("config: duration must be > 0");
  }
  if (!(demand_nm >= 0.0)) {
    throw std::invalid_argument("config: demand must be >= 0");
  }
  if (rmse_window != "low-mu" && rmse_window != "full") {
    throw std::invalid_argument("config: rmse_window must be low-mu or full");
  }
  if (map_file.empty()) {
    if (!(map_high_mu > 0.0 && map_high_mu <= 1.2 && map_low_mu > 0.0 &&
          map_low_mu <= 1.2)) {
      throw std::invalid_argument("config: map mu values must lie in (0, 1.2]");
    }
  }
  controller_config().validate();
  plant_params().validate();
  // The controller period must be an exact number of plant steps.
  substep_count(ctrl_ts_s, plant_dt_s);
}

FrictionMap ScenarioConfig::friction_map(const std::string& base_dir) const {
  if (map_file.empty()) {
    return FrictionMap(
        {{0.0, map_high_mu}, {map_step_m, map_low_mu}});
  }
  std::filesystem::path p(map_file);
  if (p.is_relative() && !base_dir.empty()) {
    p = std::filesystem::path(base_dir) / p;
  }
  return FrictionMap::load(p.string());
}

ControllerConfig ScenarioConfig::controller_config() const {
  ControllerConfig cc;
  cc.mode = mode;
  cc.ts_s = ctrl_ts_s;
  cc.n_steps = ctrl_n_steps;
  cc.substep_s = ctrl_substep_s;
  cc.weights.slack_fl = w_slack;
  cc.weights.slack_fr = w_slack;
  cc.weights.torque = w_torque;
  cc.weights.eint_fl = w_eint;
  cc.weights.eint_fr = w_eint;
  cc.vehicle = vehicle;
  cc.vehicle.tau_s = ctrl_tau_s;
  cc.tire = tire;
  cc.dt_delay_s = ctrl_delay_comp_s;
  cc.rti.lm_damping = lm_damping;
  cc.eint_antiwindup = eint_antiwindup;
  cc.eint_limit_s = eint_limit_s;
  return cc;
}

PlantParams ScenarioConfig::plant_params() const {
  PlantParams pp;
  pp.vehicle = vehicle;
  pp.vehicle.tau_s = plant_tau_s;
  pp.dt_delay_s = plant_delay_s;
  pp.dt_plant_s = plant_dt_s;
  pp.rolling_resistance = rolling_resistance;
  return pp;
}

}  // namespace pretc
