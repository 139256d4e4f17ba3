#include "phasefit/cli.hpp"

#include <cmath>
#include <iostream>

#include "phasefit/errors.hpp"
#include "phasefit/io.hpp"
#include "phasefit/rng.hpp"

namespace phasefit {

namespace {

constexpr std::uint64_t kIrrsDomain = 0x49525253ULL;
constexpr std::uint64_t kNoiseDomain = 0x4e4f4953ULL;

void check_regime(const AdmissibleSet& adm, double k) {
  if (!(adm.q_high < k * k))
    throw ValidationError("admissible set allows q >= k^2 (q_high = " +
                          format_double(adm.q_high) + ", k = " + format_double(k) +
                          "); the solver requires q < k^2");
}

std::uint64_t cell_noise_seed(const RunConfig& cfg, std::uint64_t cell) {
  if (cfg.noise_seed) return *cfg.noise_seed;
  return derive_seed(cfg.seed, kNoiseDomain, cell);
}

nlohmann::json params_json(const RunConfig& cfg) {
  return nlohmann::json{
      {"admissible",
       {{"R", cfg.admissible.R},
        {"M", cfg.admissible.M},
        {"q_low", cfg.admissible.q_low},
        {"q_high", cfg.admissible.q_high}}},
      {"irrs",
       {{"L", cfg.irrs_params.L},
        {"gamma", cfg.irrs_params.gamma},
        {"nu", cfg.irrs_params.nu},
        {"beta", cfg.irrs_params.beta},
        {"epsilon", cfg.irrs_params.epsilon},
        {"j_max", cfg.irrs_params.j_max}}},
      {"local",
       {{"eps_r", cfg.local_params.eps_r},
        {"line_tol", cfg.local_params.line_tol},
        {"powell_ftol", cfg.local_params.powell_ftol},
        {"max_powell_iters", cfg.local_params.max_powell_iters}}},
      {"include_l0", cfg.include_l0},
      {"l_cap", cfg.l_cap}};
}

StabilityReport run_cell(const RunConfig& cfg, const PhaseShiftSet& targets, std::uint64_t cell,
                         const PotentialConfig* planted) {
  check_regime(cfg.admissible, targets.k);
  InverseProblem prob(targets, cfg.admissible, cfg.include_l0);
  IrrsParams params = cfg.irrs_params;
  params.seed = derive_seed(cfg.seed, kIrrsDomain, cell);
  IrrsOptions opts;
  opts.workers = cfg.workers;
  opts.planted = planted;
  return irrs(prob, params, cfg.local_params, opts);
}

nlohmann::json report_envelope(const RunConfig& cfg, const StabilityReport& report, double k,
                               double h) {
  nlohmann::json out = report_to_json(report);
  out["fingerprint"] = config_fingerprint(cfg);
  out["seed"] = cfg.seed;
  out["k"] = k;
  out["h"] = h;
  out["params"] = params_json(cfg);
  return out;
}

void print_summary(const StabilityReport& report, double k, double h) {
  std::cout << "k = " << format_double(k) << ", h = " << format_double(h) << "\n";
  std::cout << "verdict: " << to_string(report.verdict) << "\n";
  for (const auto& it : report.iterations)
    std::cout << "  iteration " << it.j << ": D = " << format_double(it.diameter)
              << " (d_av = " << format_double(it.d_av) << ")\n";
  std::cout << "best phi = " << format_double(report.best.value) << "\n";
  std::cout << "best potential:\n";
  const auto& p = report.best.config;
  double prev = 0.0;
  for (int i = 0; i < p.layer_count(); ++i) {
    std::cout << "  [" << format_double(prev) << ", " << format_double(p.radii[i])
              << "): " << format_double(p.values[i]) << "\n";
    prev = p.radii[i];
  }
  if (report.has_planted) std::cout << "planted phi = " << format_double(report.planted_phi) << "\n";
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig cfg;
  if (doc.contains("potential")) cfg.potential = potential_from_json(doc.at("potential"));
  cfg.targets_path = doc.value("targets", "");
  cfg.k = doc.value("k", 0.0);
  if (doc.contains("k_list")) cfg.k_list = doc.at("k_list").get<std::vector<double>>();
  if (doc.contains("h_list")) cfg.h_list = doc.at("h_list").get<std::vector<double>>();
  if (doc.contains("admissible")) {
    const auto& a = doc.at("admissible");
    cfg.admissible.R = a.value("R", cfg.admissible.R);
    cfg.admissible.M = a.value("M", cfg.admissible.M);
    cfg.admissible.q_low = a.value("q_low", cfg.admissible.q_low);
    cfg.admissible.q_high = a.value("q_high", cfg.admissible.q_high);
  }
  if (doc.contains("irrs")) {
    const auto& g = doc.at("irrs");
    cfg.irrs_params.L = g.value("L", cfg.irrs_params.L);
    cfg.irrs_params.gamma = g.value("gamma", cfg.irrs_params.gamma);
    cfg.irrs_params.nu = g.value("nu", cfg.irrs_params.nu);
    cfg.irrs_params.beta = g.value("beta", cfg.irrs_params.beta);
    cfg.irrs_params.epsilon = g.value("epsilon", cfg.irrs_params.epsilon);
    cfg.irrs_params.j_max = g.value("j_max", cfg.irrs_params.j_max);
  }
  if (doc.contains("local")) {
    const auto& l = doc.at("local");
    cfg.local_params.eps_r = l.value("eps_r", cfg.local_params.eps_r);
    cfg.local_params.line_tol = l.value("line_tol", cfg.local_params.line_tol);
    cfg.local_params.powell_ftol = l.value("powell_ftol", cfg.local_params.powell_ftol);
    cfg.local_params.max_powell_iters =
        l.value("max_powell_iters", cfg.local_params.max_powell_iters);
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    cfg.noise_h = n.value("h", 0.0);
    if (n.contains("seed")) cfg.noise_seed = n.at("seed").get<std::uint64_t>();
  }
  cfg.seed = doc.value("seed", std::uint64_t{0});
  cfg.include_l0 = doc.value("include_l0", true);
  cfg.l_cap = doc.value("l_cap", 128);
  cfg.workers = doc.value("workers", 0);
  cfg.out_path = doc.value("out", "");
  cfg.plant_path = doc.value("plant", "");
  return cfg;
}

void apply_preset(RunConfig& cfg, const std::string& preset) {
  if (preset == "paper") {
    cfg.irrs_params.L = 5000;
    cfg.irrs_params.gamma = 0.01;
    cfg.irrs_params.nu = 0.1;
    cfg.irrs_params.j_max = 6;
  } else if (preset == "desk") {
    cfg.irrs_params.L = 500;
    cfg.irrs_params.gamma = 0.05;
    cfg.irrs_params.nu = 0.1;
    cfg.irrs_params.j_max = 3;
  } else {
    throw ValidationError("unknown preset: " + preset + " (expected paper or desk)");
  }
}

std::string config_fingerprint(const RunConfig& cfg) {
  nlohmann::json doc = params_json(cfg);
  doc["mode"] = cfg.mode;
  doc["seed"] = cfg.seed;
  doc["k"] = cfg.k;
  doc["k_list"] = cfg.k_list;
  doc["h_list"] = cfg.h_list;
  doc["noise_h"] = cfg.noise_h;
  if (cfg.noise_seed) doc["noise_seed"] = *cfg.noise_seed;
  if (cfg.potential) doc["potential"] = potential_to_json(*cfg.potential);
  if (!cfg.targets_path.empty())
    doc["targets_sha"] = fingerprint_hex(fnv1a(read_file(cfg.targets_path)));
  if (!cfg.plant_path.empty())
    doc["plant_sha"] = fingerprint_hex(fnv1a(read_file(cfg.plant_path)));
  return fingerprint_hex(fnv1a(doc.dump()));
}

int cmd_forward(const RunConfig& cfg) {
  if (!cfg.potential) throw ValidationError("forward: a potential is required");
  if (!(cfg.k > 0.0)) throw ValidationError("forward: k must be positive");
  const int n = shift_count(*cfg.potential, cfg.k, cfg.l_cap);
  const PhaseShiftSet shifts = phase_shifts(*cfg.potential, cfg.k, n);
  const std::string csv = shifts_to_csv(
      shifts, {{"fingerprint", config_fingerprint(cfg)},
               {"seed", std::to_string(cfg.seed)},
               {"potential", potential_to_json(*cfg.potential).dump()}});
  write_file(cfg.out_path, csv);
  std::cout << "wrote " << shifts.shifts.size() << " shifts (l = 0.." << n << ") to "
            << cfg.out_path << "\n";
  return 0;
}

int cmd_noise(const RunConfig& cfg) {
  if (cfg.targets_path.empty()) throw ValidationError("noise: input shift file required");
  const ShiftFile in = parse_shifts_csv(read_file(cfg.targets_path));
  double delta_max = 0.0;
  for (double d : in.shifts.shifts) delta_max = std::max(delta_max, std::abs(d));
  const std::uint64_t nseed = cell_noise_seed(cfg, 0);
  const PhaseShiftSet noisy = add_noise(in.shifts, NoiseSpec{cfg.noise_h, nseed});
  const std::string csv = shifts_to_csv(
      noisy, {{"fingerprint", config_fingerprint(cfg)},
              {"h", format_double(cfg.noise_h)},
              {"noise-seed", std::to_string(nseed)},
              {"delta-max", format_double(delta_max)}});
  write_file(cfg.out_path, csv);
  return 0;
}

int cmd_identify(const RunConfig& cfg) {
  if (cfg.targets_path.empty()) throw ValidationError("identify: target shift file required");
  const ShiftFile in = parse_shifts_csv(read_file(cfg.targets_path));
  PhaseShiftSet targets = in.shifts;
  if (cfg.noise_h > 0.0)
    targets = add_noise(targets, NoiseSpec{cfg.noise_h, cell_noise_seed(cfg, 0)});

  std::optional<PotentialConfig> planted;
  if (!cfg.plant_path.empty())
    planted = potential_from_json(nlohmann::json::parse(read_file(cfg.plant_path)));

  const StabilityReport report =
      run_cell(cfg, targets, 0, planted ? &*planted : nullptr);
  write_file(cfg.out_path, report_envelope(cfg, report, targets.k, cfg.noise_h).dump(2) + "\n");
  print_summary(report, targets.k, cfg.noise_h);
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (!cfg.potential) throw ValidationError("sweep: a reference potential is required");
  if (cfg.k_list.empty() || cfg.h_list.empty())
    throw ValidationError("sweep: k_list and h_list must be nonempty");
  for (double k : cfg.k_list) check_regime(cfg.admissible, k);

  std::vector<std::vector<double>> d(cfg.k_list.size(),
                                     std::vector<double>(cfg.h_list.size(), 0.0));
  for (std::size_t ki = 0; ki < cfg.k_list.size(); ++ki) {
    for (std::size_t hi = 0; hi < cfg.h_list.size(); ++hi) {
      const std::uint64_t cell = ki * cfg.h_list.size() + hi;
      const double k = cfg.k_list[ki];
      const double h = cfg.h_list[hi];
      const int n = shift_count(*cfg.potential, k, cfg.l_cap);
      PhaseShiftSet targets = phase_shifts(*cfg.potential, k, n);
      if (h > 0.0) targets = add_noise(targets, NoiseSpec{h, cell_noise_seed(cfg, cell)});
      const StabilityReport report = run_cell(cfg, targets, cell, nullptr);
      d[ki][hi] = report.iterations.back().diameter;
      RunConfig cell_cfg = cfg;
      cell_cfg.noise_h = h;
      write_file(cfg.out_path + ".k" + format_double(k) + "_h" + format_double(h) + ".json",
                 report_envelope(cell_cfg, report, k, h).dump(2) + "\n");
      std::cout << "cell k=" << format_double(k) << " h=" << format_double(h)
                << ": D = " << format_double(d[ki][hi]) << " (" << to_string(report.verdict)
                << ")\n";
    }
  }
  write_file(cfg.out_path,
             d_matrix_to_csv(cfg.k_list, cfg.h_list, d,
                             {{"fingerprint", config_fingerprint(cfg)},
                              {"seed", std::to_string(cfg.seed)}}));
  return 0;
}

}  // namespace phasefit
