#include "ppmlr/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ppmlr/errors.hpp"

namespace ppmlr {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw InvalidSpec("config key '" + key + "': not a number: '" + v + "'");
  }
  if (used != v.size())
    throw InvalidSpec("config key '" + key + "': trailing junk in '" + v + "'");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d)
    throw InvalidSpec("config key '" + key + "': expected an integer, got '" + v + "'");
  return l;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw InvalidSpec("config key '" + key + "': expected a boolean, got '" + v + "'");
}

// grid.<axis>.<field>
bool apply_axis_key(AxisSpec& ax, const std::string& key, const std::string& field,
                    const std::string& v) {
  if (field == "min") ax.min = to_double(key, v);
  else if (field == "max") ax.max = to_double(key, v);
  else if (field == "uniform_lo") ax.uniform_lo = to_double(key, v);
  else if (field == "uniform_hi") ax.uniform_hi = to_double(key, v);
  else if (field == "d_uniform") ax.d_uniform = to_double(key, v);
  else if (field == "cells") ax.target_cells = static_cast<int>(to_long(key, v));
  else if (field == "ratio") ax.nominal_ratio = to_double(key, v);
  else return false;
  return true;
}

}  // namespace

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key.rfind("grid.", 0) == 0) {
    const auto rest = key.substr(5);
    const auto dot = rest.find('.');
    if (dot == 1) {
      AxisSpec* ax = rest[0] == 'x' ? &cfg.grid_x
                     : rest[0] == 'y' ? &cfg.grid_y
                     : rest[0] == 'z' ? &cfg.grid_z
                                      : nullptr;
      if (ax && apply_axis_key(*ax, key, rest.substr(2), v)) return;
    }
  } else if (key == "partition.nx") {
    cfg.partition.nx = static_cast<int>(to_long(key, v));
    return;
  } else if (key == "partition.ny") {
    cfg.partition.ny = static_cast<int>(to_long(key, v));
    return;
  } else if (key == "partition.nz") {
    cfg.partition.nz = static_cast<int>(to_long(key, v));
    return;
  } else if (key == "wind.rho") { cfg.wind.rho_sw = to_double(key, v); return; }
  else if (key == "wind.p") { cfg.wind.p_sw = to_double(key, v); return; }
  else if (key == "wind.vx") { cfg.wind.v_sw.x = to_double(key, v); return; }
  else if (key == "wind.vy") { cfg.wind.v_sw.y = to_double(key, v); return; }
  else if (key == "wind.vz") { cfg.wind.v_sw.z = to_double(key, v); return; }
  else if (key == "wind.imf_x") { cfg.wind.imf.x = to_double(key, v); return; }
  else if (key == "wind.imf_y") { cfg.wind.imf.y = to_double(key, v); return; }
  else if (key == "wind.imf_z") { cfg.wind.imf.z = to_double(key, v); return; }
  else if (key == "init.rho_core") { cfg.profiles.rho_core = to_double(key, v); return; }
  else if (key == "init.p_core") { cfg.profiles.p_core = to_double(key, v); return; }
  else if (key == "init.falloff") { cfg.profiles.falloff = to_double(key, v); return; }
  else if (key == "init.r_ref") { cfg.profiles.r_ref = to_double(key, v); return; }
  else if (key == "constants.gamma") { cfg.constants.gamma = to_double(key, v); return; }
  else if (key == "constants.mu0") { cfg.constants.mu0 = to_double(key, v); return; }
  else if (key == "constants.pressure_floor") {
    cfg.constants.pressure_floor = to_double(key, v);
    return;
  } else if (key == "run.cfl") {
    cfg.cfl = to_double(key, v);
    if (cfg.cfl <= 0.0 || cfg.cfl > 1.0)
      throw InvalidSpec("config key 'run.cfl': must be in (0, 1]");
    return;
  } else if (key == "run.ghost") {
    cfg.ghost = static_cast<int>(to_long(key, v));
    if (cfg.ghost < 4) throw InvalidSpec("config key 'run.ghost': must be >= 4");
    return;
  } else if (key == "run.steps") {
    cfg.steps = to_long(key, v);
    if (cfg.steps < 0) throw InvalidSpec("config key 'run.steps': must be >= 0");
    return;
  } else if (key == "run.cadence") {
    cfg.cadence = to_long(key, v);
    if (cfg.cadence < 1) throw InvalidSpec("config key 'run.cadence': must be >= 1");
    return;
  } else if (key == "run.transport") {
    if (v == "staged") cfg.transport = TransportKind::Staged;
    else if (v == "direct") cfg.transport = TransportKind::Direct;
    else throw InvalidSpec("config key 'run.transport': expected staged or direct");
    return;
  } else if (key == "run.out") {
    cfg.out_dir = v;
    return;
  } else if (key == "run.sources") { cfg.with_sources = to_bool(key, v); return; }
  else if (key == "run.dipole") { cfg.with_dipole = to_bool(key, v); return; }
  else if (key == "boundary.mode") {
    if (v == "outflow") cfg.boundary = BoundaryMode::Outflow;
    else if (v == "periodic") cfg.boundary = BoundaryMode::Periodic;
    else if (v == "magnetosphere") cfg.boundary = BoundaryMode::Magnetosphere;
    else throw InvalidSpec("config key 'boundary.mode': unknown mode '" + v + "'");
    return;
  } else if (key == "init.mode") {
    if (v == "magnetosphere") cfg.init = InitMode::Magnetosphere;
    else if (v == "uniform") cfg.init = InitMode::Uniform;
    else throw InvalidSpec("config key 'init.mode': unknown mode '" + v + "'");
    return;
  }
  throw InvalidSpec("unknown config key: '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidSpec("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw InvalidSpec("config line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second)
      throw InvalidSpec("config line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    apply_config_key(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidSpec("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  RunConfig cfg = parse_config(buf.str());
  if (const char* env = std::getenv("PPMLR_OVERRIDES")) {
    std::istringstream ov(env);
    std::string pair;
    while (std::getline(ov, pair, ';')) {
      pair = trim(pair);
      if (pair.empty()) continue;
      const auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw InvalidSpec("PPMLR_OVERRIDES entry is not key=value: '" + pair + "'");
      apply_config_key(cfg, trim(pair.substr(0, eq)), pair.substr(eq + 1));
    }
  }
  return cfg;
}

StretchedGrid RunConfig::make_grid() const {
  return {build_axis(grid_x), build_axis(grid_y), build_axis(grid_z)};
}

HarnessOptions RunConfig::make_options() const {
  HarnessOptions o;
  o.cfl = cfl;
  o.ghost = ghost;
  o.boundary = boundary;
  o.transport = transport;
  o.with_sources = with_sources;
  o.with_dipole = with_dipole;
  o.wind = wind;
  o.constants = constants;
  return o;
}

}  // namespace ppmlr
