// Copyright 2026 The uavbs Authors.
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

#include "uavbs/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace uavbs {
namespace {

std::string trim(std::string_view s) {
  std::string out(s);
  boost::algorithm::trim(out);
  return out;
}

double to_double(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(key + ": expected a number, got '" + t + "'");
  }
  return v;
}

long long to_integer(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + t + "'");
  }
  return v;
}

int to_int(const std::string& key, std::string_view text) {
  const long long v = to_integer(key, text);
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(key + ": value out of range");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, std::string_view text) {
  const std::string t = boost::algorithm::to_lower_copy(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + t + "'");
}

std::vector<double> to_list(const std::string& key, std::string_view text) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::vector<std::string> parts;
  boost::algorithm::split(parts, t, boost::is_any_of(","));
  for (const auto& p : parts) out.push_back(to_double(key, p));
  return out;
}

// "x,y,h; x,y,h" or "x,y; x,y"
std::vector<std::vector<double>> to_tuples(const std::string& key, std::string_view text,
                                           std::size_t arity) {
  std::vector<std::vector<double>> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::vector<std::string> groups;
  boost::algorithm::split(groups, t, boost::is_any_of(";"));
  for (const auto& g : groups) {
    if (trim(g).empty()) continue;
    auto v = to_list(key, g);
    if (v.size() != arity) {
      throw ConfigError(key + ": each entry needs " + std::to_string(arity) + " numbers");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += num(v[i]);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;
using SectionTable = std::map<std::string, Setter>;

#define UAVBS_NUM(field) [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.field = to_double(k, v); }
#define UAVBS_INT(field) [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.field = to_int(k, v); }

const std::map<std::string, SectionTable>& schema() {
  static const std::map<std::string, SectionTable> table = {
      {"experiment",
       {
           {"strategy", [](ExperimentConfig& c, const std::string&, const std::string& v) {
              c.strategy = parse_strategy(trim(v));
            }},
           {"n_uavs", UAVBS_INT(n_uavs)},
           {"n_episodes", UAVBS_INT(n_episodes)},
           {"n_runs", UAVBS_INT(n_runs)},
           {"summary_window", UAVBS_INT(summary_window)},
           {"base_seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              const long long s = to_integer(k, v);
              if (s < 0) throw ConfigError(k + ": seed must be nonnegative");
              c.base_seed = static_cast<std::uint64_t>(s);
            }},
           {"output_dir", [](ExperimentConfig& c, const std::string&, const std::string& v) {
              c.output_dir = trim(v);
            }},
       }},
      {"scenario",
       {
           {"width_m", UAVBS_NUM(scenario.area.width)},
           {"height_m", UAVBS_NUM(scenario.area.height)},
           {"n_static", UAVBS_INT(scenario.n_static)},
           {"n_mobile", UAVBS_INT(scenario.n_mobile)},
           {"distribution", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              const std::string d = boost::algorithm::to_lower_copy(trim(v));
              if (d == "uniform") {
                c.scenario.distribution = DistributionKind::Uniform;
              } else if (d == "clustered") {
                c.scenario.distribution = DistributionKind::Clustered;
              } else {
                throw ConfigError(k + ": expected 'uniform' or 'clustered'");
              }
            }},
           {"cluster_count", UAVBS_INT(scenario.cluster_count)},
           {"cluster_spread_m", UAVBS_NUM(scenario.cluster_spread_m)},
           {"cluster_centers", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.scenario.cluster_centers.clear();
              for (const auto& t : to_tuples(k, v, 2)) c.scenario.cluster_centers.push_back({t[0], t[1]});
            }},
           {"speed_min", UAVBS_NUM(scenario.mobility.speed_min)},
           {"speed_max", UAVBS_NUM(scenario.mobility.speed_max)},
           {"epoch_min", UAVBS_INT(scenario.mobility.epoch_min)},
           {"epoch_max", UAVBS_INT(scenario.mobility.epoch_max)},
       }},
      {"channel",
       {
           {"eta", UAVBS_NUM(channel.eta)},
           {"alpha", UAVBS_NUM(channel.alpha)},
           {"tx_power_w", UAVBS_NUM(channel.tx_power_w)},
           {"noise_w", UAVBS_NUM(channel.noise_w)},
           {"sinr_threshold", UAVBS_NUM(channel.sinr_threshold)},
           {"capacity", UAVBS_INT(channel.capacity)},
           {"raster_cell_m", UAVBS_NUM(channel.raster_cell_m)},
           {"interference_range_m", UAVBS_NUM(channel.interference_range_m)},
       }},
      {"energy",
       {
           {"kappa0", UAVBS_NUM(energy.kappa0)},
           {"kappai", UAVBS_NUM(energy.kappai)},
           {"u_tip", UAVBS_NUM(energy.u_tip)},
           {"v0", UAVBS_NUM(energy.v0)},
           {"nu", UAVBS_NUM(energy.nu)},
           {"solidity", UAVBS_NUM(energy.solidity)},
           {"rotor_area", UAVBS_NUM(energy.rotor_area)},
           {"rho", UAVBS_NUM(energy.rho)},
           {"dt", UAVBS_NUM(energy.dt)},
           {"induced_sign", UAVBS_NUM(energy.induced_sign)},
       }},
      {"learning",
       {
           {"lr", UAVBS_NUM(learning.learn.learning_rate)},
           {"discount", UAVBS_NUM(learning.learn.discount)},
           {"epsilon_start", UAVBS_NUM(learning.learn.epsilon_start)},
           {"epsilon_decay", UAVBS_NUM(learning.learn.epsilon_decay)},
           {"epsilon_min", UAVBS_NUM(learning.learn.epsilon_min)},
           {"max_step", UAVBS_INT(learning.learn.max_step)},
           {"step_m", UAVBS_NUM(learning.step_m)},
           {"altitudes", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.learning.altitudes = to_list(k, v);
            }},
           {"near_m", UAVBS_NUM(learning.near_m)},
           {"mid_m", UAVBS_NUM(learning.mid_m)},
           {"proximity_m", UAVBS_NUM(learning.proximity_m)},
           {"broadcast_bits", UAVBS_INT(learning.broadcast_bits)},
           {"goal_enabled", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.learning.rules.goal_enabled = to_bool(k, v);
            }},
           {"goal_fraction", UAVBS_NUM(learning.rules.goal_fraction)},
           {"goal_sustain_steps", UAVBS_INT(learning.rules.goal_sustain_steps)},
           {"battery_budget_j", UAVBS_NUM(learning.rules.battery_budget_j)},
           {"start_positions", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.learning.start_positions.clear();
              for (const auto& t : to_tuples(k, v, 3)) c.learning.start_positions.push_back({t[0], t[1], t[2]});
            }},
       }},
      {"es",
       {
           {"grid_m", UAVBS_NUM(exhaustive.grid_m)},
           {"altitudes", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.exhaustive.altitudes = to_list(k, v);
            }},
           {"max_combinations", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              const long long m = to_integer(k, v);
              if (m < 1) throw ConfigError(k + ": must be >= 1");
              c.exhaustive.max_combinations = static_cast<std::uint64_t>(m);
            }},
       }},
      {"is", {{"max_rounds", UAVBS_INT(iterative.max_rounds)}}},
      {"cql", {{"kmeans_iterations", UAVBS_INT(cluster_ql.kmeans_iterations)}}},
  };
  return table;
}

#undef UAVBS_NUM
#undef UAVBS_INT

bool on_lattice(double v, double step) {
  const double k = std::round(v / step);
  return std::abs(k * step - v) <= 1e-6;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Dqlsi: return "dqlsi";
    case Strategy::Exhaustive: return "es";
    case Strategy::Iterative: return "is";
    case Strategy::ClusterQl: return "cql";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  const std::string n = boost::algorithm::to_lower_copy(std::string(name));
  if (n == "dqlsi") return Strategy::Dqlsi;
  if (n == "es") return Strategy::Exhaustive;
  if (n == "is") return Strategy::Iterative;
  if (n == "cql") return Strategy::ClusterQl;
  throw ConfigError("experiment.strategy: unknown strategy '" + n +
                    "' (expected dqlsi, es, is or cql)");
}

std::vector<UavPosition> default_start_positions(const AreaSpec& area, int n_uavs,
                                                 double altitude, double offset,
                                                 double step_m) {
  std::vector<UavPosition> out;
  for (int k = 0; k < n_uavs; ++k) {
    const double inset = offset + static_cast<double>(k / 4) * step_m;
    const double x = (k % 2 == 0) ? inset : area.width - inset;
    const double y = ((k / 2) % 2 == 0) ? inset : area.height - inset;
    out.push_back({x, y, altitude});
  }
  return out;
}

StateSpace ExperimentConfig::state_space() const {
  StateSpace s;
  s.area = scenario.area;
  s.cell_m = learning.step_m;
  s.altitudes = learning.altitudes;
  s.near_m = learning.near_m;
  s.mid_m = learning.mid_m;
  return s;
}

std::vector<UavPosition> ExperimentConfig::starts() const {
  if (!learning.start_positions.empty()) return learning.start_positions;
  const double top = learning.altitudes.empty() ? 100.0 : learning.altitudes.back();
  return default_start_positions(scenario.area, n_uavs, top, 100.0, learning.step_m);
}

void ExperimentConfig::validate() const {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  try {
    check(n_uavs >= 1, "experiment.n_uavs must be >= 1");
    check(n_episodes >= 1, "experiment.n_episodes must be >= 1");
    check(n_runs >= 1, "experiment.n_runs must be >= 1");
    check(summary_window >= 1, "experiment.summary_window must be >= 1");
    check(!output_dir.empty(), "experiment.output_dir must not be empty");

    validate_area(scenario.area);
    check(scenario.n_static >= 0 && scenario.n_mobile >= 0,
          "scenario device counts must be nonnegative");
    scenario.mobility.validate();
    if (scenario.distribution == DistributionKind::Clustered) {
      check(scenario.cluster_count >= 0, "scenario.cluster_count must be >= 0");
      check(scenario.cluster_spread_m > 0.0, "scenario.cluster_spread_m must be positive");
      for (const Vec2& c : scenario.cluster_centers) {
        check(scenario.area.contains(c), "scenario.cluster_centers must lie inside the area");
      }
    }

    channel.validate();
    energy.validate();
    learning.learn.validate();
    check(learning.step_m > 0.0, "learning.step_m must be positive");
    check(learning.proximity_m >= 0.0, "learning.proximity_m must be >= 0");
    check(learning.broadcast_bits >= 1, "learning.broadcast_bits must be >= 1");
    check(learning.rules.goal_fraction > 0.0 && learning.rules.goal_fraction <= 1.0,
          "learning.goal_fraction must lie in (0, 1]");
    check(learning.rules.goal_sustain_steps >= 1, "learning.goal_sustain_steps must be >= 1");
    check(learning.rules.battery_budget_j >= 0.0, "learning.battery_budget_j must be >= 0");
    const StateSpace space = state_space();
    space.validate();

    const auto start = starts();
    check(static_cast<int>(start.size()) == n_uavs,
          "learning.start_positions must list exactly n_uavs positions");
    for (const UavPosition& p : start) {
      check(scenario.area.contains({p.x, p.y}), "start positions must lie inside the area");
      check(on_lattice(p.x, learning.step_m) && on_lattice(p.y, learning.step_m),
            "start positions must lie on the step_m lattice");
      space.altitude_level(p.h);
    }

    check(exhaustive.grid_m > 0.0 && on_lattice(exhaustive.grid_m, learning.step_m),
          "es.grid_m must be a positive multiple of learning.step_m");
    check(!exhaustive.altitudes.empty(), "es.altitudes must not be empty");
    for (double h : exhaustive.altitudes) space.altitude_level(h);
    check(iterative.max_rounds >= 1, "is.max_rounds must be >= 1");
    check(cluster_ql.kmeans_iterations >= 1, "cql.kmeans_iterations must be >= 1");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }
  ExperimentConfig cfg;
  const auto& table = schema();
  for (const auto& [section, body] : tree) {
    const auto sec = table.find(section);
    if (sec == table.end()) throw ConfigError("unknown config section [" + section + "]");
    if (!body.data().empty() && body.empty()) {
      throw ConfigError("key '" + section + "' must appear inside a section");
    }
    for (const auto& [key, value] : body) {
      const auto setter = sec->second.find(key);
      const std::string full = section + "." + key;
      if (setter == sec->second.end()) throw ConfigError("unknown config key " + full);
      setter->second(cfg, full, value.data());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[experiment]\n"
    << "strategy = " << to_string(c.strategy) << "\n"
    << "n_uavs = " << c.n_uavs << "\n"
    << "n_episodes = " << c.n_episodes << "\n"
    << "n_runs = " << c.n_runs << "\n"
    << "summary_window = " << c.summary_window << "\n"
    << "base_seed = " << c.base_seed << "\n"
    << "output_dir = " << c.output_dir << "\n\n";
  o << "[scenario]\n"
    << "width_m = " << num(c.scenario.area.width) << "\n"
    << "height_m = " << num(c.scenario.area.height) << "\n"
    << "n_static = " << c.scenario.n_static << "\n"
    << "n_mobile = " << c.scenario.n_mobile << "\n"
    << "distribution = "
    << (c.scenario.distribution == DistributionKind::Uniform ? "uniform" : "clustered") << "\n"
    << "cluster_count = " << c.scenario.cluster_count << "\n"
    << "cluster_spread_m = " << num(c.scenario.cluster_spread_m) << "\n";
  if (!c.scenario.cluster_centers.empty()) {
    o << "cluster_centers = ";
    for (std::size_t i = 0; i < c.scenario.cluster_centers.size(); ++i) {
      if (i) o << "; ";
      o << num(c.scenario.cluster_centers[i].x) << ", " << num(c.scenario.cluster_centers[i].y);
    }
    o << "\n";
  }
  o << "speed_min = " << num(c.scenario.mobility.speed_min) << "\n"
    << "speed_max = " << num(c.scenario.mobility.speed_max) << "\n"
    << "epoch_min = " << c.scenario.mobility.epoch_min << "\n"
    << "epoch_max = " << c.scenario.mobility.epoch_max << "\n\n";
  o << "[channel]\n"
    << "eta = " << num(c.channel.eta) << "\n"
    << "alpha = " << num(c.channel.alpha) << "\n"
    << "tx_power_w = " << num(c.channel.tx_power_w) << "\n"
    << "noise_w = " << num(c.channel.noise_w) << "\n"
    << "sinr_threshold = " << num(c.channel.sinr_threshold) << "\n"
    << "capacity = " << c.channel.capacity << "\n"
    << "raster_cell_m = " << num(c.channel.raster_cell_m) << "\n"
    << "interference_range_m = " << num(c.channel.interference_range_m) << "\n\n";
  o << "[energy]\n"
    << "kappa0 = " << num(c.energy.kappa0) << "\n"
    << "kappai = " << num(c.energy.kappai) << "\n"
    << "u_tip = " << num(c.energy.u_tip) << "\n"
    << "v0 = " << num(c.energy.v0) << "\n"
    << "nu = " << num(c.energy.nu) << "\n"
    << "solidity = " << num(c.energy.solidity) << "\n"
    << "rotor_area = " << num(c.energy.rotor_area) << "\n"
    << "rho = " << num(c.energy.rho) << "\n"
    << "dt = " << num(c.energy.dt) << "\n"
    << "induced_sign = " << num(c.energy.induced_sign) << "\n\n";
  const auto& l = c.learning;
  o << "[learning]\n"
    << "lr = " << num(l.learn.learning_rate) << "\n"
    << "discount = " << num(l.learn.discount) << "\n"
    << "epsilon_start = " << num(l.learn.epsilon_start) << "\n"
    << "epsilon_decay = " << num(l.learn.epsilon_decay) << "\n"
    << "epsilon_min = " << num(l.learn.epsilon_min) << "\n"
    << "max_step = " << l.learn.max_step << "\n"
    << "step_m = " << num(l.step_m) << "\n"
    << "altitudes = " << join(l.altitudes) << "\n"
    << "near_m = " << num(l.near_m) << "\n"
    << "mid_m = " << num(l.mid_m) << "\n"
    << "proximity_m = " << num(l.proximity_m) << "\n"
    << "broadcast_bits = " << l.broadcast_bits << "\n"
    << "goal_enabled = " << (l.rules.goal_enabled ? "true" : "false") << "\n"
    << "goal_fraction = " << num(l.rules.goal_fraction) << "\n"
    << "goal_sustain_steps = " << l.rules.goal_sustain_steps << "\n"
    << "battery_budget_j = " << num(l.rules.battery_budget_j) << "\n";
  if (!l.start_positions.empty()) {
    o << "start_positions = ";
    for (std::size_t i = 0; i < l.start_positions.size(); ++i) {
      if (i) o << "; ";
      o << num(l.start_positions[i].x) << ", " << num(l.start_positions[i].y) << ", "
        << num(l.start_positions[i].h);
    }
    o << "\n";
  }
  o << "\n[es]\n"
    << "grid_m = " << num(c.exhaustive.grid_m) << "\n"
    << "altitudes = " << join(c.exhaustive.altitudes) << "\n"
    << "max_combinations = " << c.exhaustive.max_combinations << "\n\n";
  o << "[is]\nmax_rounds = " << c.iterative.max_rounds << "\n\n";
  o << "[cql]\nkmeans_iterations = " << c.cluster_ql.kmeans_iterations << "\n";
  return o.str();
}

}  // namespace uavbs
