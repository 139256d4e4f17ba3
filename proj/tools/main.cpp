#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasefit/cli.hpp"
#include "phasefit/errors.hpp"
#include "phasefit/io.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string preset;
  std::string out;
  std::string targets;
  std::string potential_path;
  std::string plant;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double k = 0.0;
  bool k_set = false;
  double noise_h = 0.0;
  bool noise_h_set = false;
  std::uint64_t noise_seed = 0;
  bool noise_seed_set = false;
  int workers = -1;
};

void add_shared(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--config", fl.config_path, "JSON config document");
  cmd->add_option("--preset", fl.preset, "parameter preset: paper or desk");
  cmd->add_option("--out", fl.out, "output path");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&fl](std::uint64_t v) { fl.seed = v; fl.seed_set = true; }, "root RNG seed");
  cmd->add_option("--workers", fl.workers, "worker threads (0 = auto)");
}

phasefit::RunConfig build_config(const Flags& fl, const std::string& mode) {
  phasefit::RunConfig cfg;
  if (!fl.config_path.empty())
    cfg = phasefit::config_from_json(nlohmann::json::parse(phasefit::read_file(fl.config_path)));
  cfg.mode = mode;
  if (!fl.preset.empty()) phasefit::apply_preset(cfg, fl.preset);
  if (fl.seed_set) cfg.seed = fl.seed;
  if (!fl.out.empty()) cfg.out_path = fl.out;
  if (!fl.targets.empty()) cfg.targets_path = fl.targets;
  if (fl.k_set) cfg.k = fl.k;
  if (fl.noise_h_set) cfg.noise_h = fl.noise_h;
  if (fl.noise_seed_set) cfg.noise_seed = fl.noise_seed;
  if (fl.workers >= 0) cfg.workers = fl.workers;
  if (!fl.plant.empty()) cfg.plant_path = fl.plant;
  if (!fl.potential_path.empty())
    cfg.potential = phasefit::potential_from_json(
        nlohmann::json::parse(phasefit::read_file(fl.potential_path)));
  if (cfg.out_path.empty()) throw phasefit::ValidationError("an output path is required (--out)");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-energy phase shift computation and potential identification"};
  app.require_subcommand(1);

  Flags fl;
  auto* fwd = app.add_subcommand("forward", "compute phase shifts of a potential");
  auto* ident = app.add_subcommand("identify", "recover a potential from target shifts");
  auto* sweep = app.add_subcommand("sweep", "stability sweep over k and h grids");
  auto* noise = app.add_subcommand("noise", "perturb a shift table with uniform noise");
  for (auto* cmd : {fwd, ident, sweep, noise}) add_shared(cmd, fl);

  for (auto* cmd : {fwd, sweep})
    cmd->add_option("--potential", fl.potential_path, "potential JSON file {radii, values}");
  fwd->add_option_function<double>(
      "--k", [&fl](double v) { fl.k = v; fl.k_set = true; }, "wave number");
  for (auto* cmd : {ident, noise})
    cmd->add_option("--targets", fl.targets, "input shift CSV");
  for (auto* cmd : {ident, noise}) {
    cmd->add_option_function<double>(
        "--noise-h", [&fl](double v) { fl.noise_h = v; fl.noise_h_set = true; },
        "relative noise level h");
    cmd->add_option_function<std::uint64_t>(
        "--noise-seed", [&fl](std::uint64_t v) { fl.noise_seed = v; fl.noise_seed_set = true; },
        "noise RNG seed (derived from --seed when absent)");
  }
  ident->add_option("--plant", fl.plant, "potential JSON planted as an extra start (diagnostic)");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string mode = app.get_subcommands().front()->get_name();
    const phasefit::RunConfig cfg = build_config(fl, mode);
    if (mode == "forward") return phasefit::cmd_forward(cfg);
    if (mode == "identify") return phasefit::cmd_identify(cfg);
    if (mode == "sweep") return phasefit::cmd_sweep(cfg);
    if (mode == "noise") return phasefit::cmd_noise(cfg);
    return 1;
  } catch (const phasefit::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 3;
  } catch (const phasefit::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
