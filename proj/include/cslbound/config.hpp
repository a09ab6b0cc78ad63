#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cslbound/device.hpp"
#include "cslbound/exclusion.hpp"
#include "cslbound/geometry.hpp"
#include "cslbound/heating.hpp"

namespace cslbound {

/// log-spaced r_C grid
struct GridSpec {
  double min = 1e-9;  ///< m
  double max = 1e-3;  ///< m
  int points = 200;
};

/// Run configuration read from JSON. Dimensional values are strings with a
/// unit ("100 um", "0.28 mK"); dimensionless ones are plain numbers. Unknown
/// keys anywhere are rejected. Sections that are absent keep the reference
/// device defaults.
struct RunConfig {
  // device: either cantilever + sphere (mode solved) or an explicit rigid geometry
  DeviceSpec device = reference_device();
  std::optional<ResonatorGeometry> geometry;
  double sphere_gap = 0.0;           ///< m
  std::optional<double> motional_mass;  ///< kg, overrides the computed mass

  double lambda = kStandardLambda;   ///< 1/s
  double r_C = kStandardRc;          ///< m
  GridSpec grid;

  double cut_low = 0.025;            ///< K
  double confidence = 0.95;
  double deltaT_max = 2.5e-3;        ///< K

  std::optional<double> xray_anchor_lambda;  ///< 1/s, no default on purpose
  double xray_anchor_rC = 1e-7;              ///< m
  bool forecast = true;
  UpgradeSpec upgrade;
  double deltaT_detectable = 1e-3;   ///< K

  double sim_T_bath = 0.1;           ///< K
  std::optional<double> sim_eta;     ///< 1/(m^2 s); default: Delta T_CSL = T_bath
  std::optional<double> sim_dt;      ///< s; default 1/(200 f0)
  long sim_steps = 1L << 20;
  int sim_trajectories = 64;
  std::optional<double> sim_burn_in; ///< s; default 5 Q/omega0
  int sim_welch_segment = 1 << 15;
  std::optional<double> sim_f0;      ///< Hz; default device f0
  std::optional<double> sim_Q;       ///< default device Q
  std::optional<double> sim_mass;    ///< kg; default device mass

  std::uint64_t seed = 1;
};

/// Throws ConfigError (unknown key, wrong type) or UnitError.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Geometry and oscillator implied by the config.
struct ResolvedDevice {
  ResonatorGeometry geometry;
  OscillatorParams oscillator;
  std::optional<ModeModel> mode;  ///< absent for an explicit geometry
};

ResolvedDevice resolve_device(const RunConfig& config);

/// Text listing every accepted key, its unit and default (for --help).
std::string config_schema_help();

}  // namespace cslbound
