#pragma once

#include <cstdint>
#include <string>

#include "fluxatom/bloch.hpp"
#include "fluxatom/model.hpp"
#include "fluxatom/spherical.hpp"

namespace fluxatom {

struct OmegaScan {
  double min = 0.0;  // omega bounds, or x bounds when in_x
  double max = 0.0;
  int points = 0;
  bool in_x = false;
};

struct ThetaGrid {
  double min = 0.05;
  double max = pi;
  int points = 64;
};

struct RunSection {
  std::string command;  // may be empty when the CLI supplies it
  double t_end = -1.0;  // negative: command-specific default
  double h = 0.0;       // 0: default_step
  double dt = 0.0;      // 0: default_jump_dt
  int n_traj = 2000;
  int n_samples = 100;
  int n_models = 1000;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::string out;  // empty: stdout
  std::string format = "csv";
  ThetaGrid theta;
  BlochState initial;  // initial.t is ignored
};

// Parsed run configuration. Angles are always radians internally; a
// top-level "degrees": true converts the angular inputs while parsing.
struct RunConfig {
  bool is_spherical = false;
  HPModel generic;        // valid when !is_spherical
  Drive drive;            // valid when !is_spherical
  SphericalModel spherical;  // valid when is_spherical
  bool has_scan = false;
  OmegaScan scan;
  RunSection run;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical serialization (radians, explicit fields, fixed key order).
// Hashing runs over this form, so equivalent configs hash identically.
std::string serialize_config(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

}  // namespace fluxatom
