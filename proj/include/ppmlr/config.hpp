#pragma once

#include <string>

#include "ppmlr/decomp.hpp"
#include "ppmlr/exchange.hpp"
#include "ppmlr/grid.hpp"
#include "ppmlr/harness.hpp"
#include "ppmlr/stepper.hpp"

namespace ppmlr {

enum class InitMode { Magnetosphere, Uniform };

// Everything a run needs, assembled from the flat key=value config text.
struct RunConfig {
  AxisSpec grid_x{-100.0, 30.0, -10.0, 10.0, 0.4, 156, 1.05};
  AxisSpec grid_y{-100.0, 100.0, -10.0, 10.0, 0.4, 150, 1.05};
  AxisSpec grid_z{-100.0, 100.0, -10.0, 10.0, 0.4, 150, 1.05};
  PartitionConfig partition;
  SolarWindParams wind;
  InitialProfiles profiles;
  Constants constants;
  double cfl = 0.5;
  int ghost = 4;
  long steps = 100;
  long cadence = 10;  // snapshot every this many steps
  TransportKind transport = TransportKind::Direct;
  std::string out_dir = "out";
  BoundaryMode boundary = BoundaryMode::Magnetosphere;
  InitMode init = InitMode::Magnetosphere;
  bool with_sources = true;
  bool with_dipole = true;

  StretchedGrid make_grid() const;
  HarnessOptions make_options() const;
};

// Parses `key = value` lines with dotted section keys; '#' starts a comment.
// Unknown keys, malformed lines, duplicate keys and out-of-range values are
// hard errors (InvalidSpec). See README for the key list.
RunConfig parse_config(const std::string& text);

// parse_config over the file contents, then `;`-separated key=value pairs
// from the PPMLR_OVERRIDES environment variable applied on top.
RunConfig load_config(const std::string& path);

// Applies one key=value pair; shared by the parser and the env overrides.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace ppmlr
