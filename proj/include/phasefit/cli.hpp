#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasefit/irrs.hpp"

namespace phasefit {

/// One experiment description: inputs, search box, tuning, outputs. Loaded
/// from a JSON config document; command-line flags override fields.
struct RunConfig {
  std::string mode;  // forward | identify | sweep | noise

  std::optional<PotentialConfig> potential;  // forward / sweep reference
  std::string targets_path;                  // identify targets / noise input
  double k = 0.0;
  std::vector<double> k_list;
  std::vector<double> h_list;

  AdmissibleSet admissible;
  IrrsParams irrs_params;
  LocalParams local_params;
  double noise_h = 0.0;
  std::optional<std::uint64_t> noise_seed;  // derived from `seed` when absent

  std::uint64_t seed = 0;
  bool include_l0 = true;
  int l_cap = 128;
  int workers = 0;
  std::string out_path;
  std::string plant_path;  // optional planted start for identify
};

/// Parse the JSON config document into a RunConfig (mode not included).
RunConfig config_from_json(const nlohmann::json& doc);

/// Apply a named parameter preset: "paper" (the full-scale defaults) or
/// "desk" (L=500, gamma=0.05, nu=0.1, j_max=3; minutes instead of hours).
void apply_preset(RunConfig& cfg, const std::string& preset);

/// Canonical fingerprint of everything that determines the outputs
/// (excludes workers and output paths).
std::string config_fingerprint(const RunConfig& cfg);

/// Commands. Each writes cfg.out_path and returns a process exit code;
/// errors raise (main maps them to codes and diagnostics).
int cmd_forward(const RunConfig& cfg);
int cmd_identify(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_noise(const RunConfig& cfg);

}  // namespace phasefit
