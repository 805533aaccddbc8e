#include "emden/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>

#include "emden/absorbing_energy.hpp"
#include "emden/constants.hpp"
#include "emden/dispersion.hpp"
#include "emden/errors.hpp"
#include "emden/io.hpp"
#include "emden/oscillator.hpp"
#include "emden/qed_spectrum.hpp"
#include "emden/sed_sim.hpp"
#include "emden/verify.hpp"
#include "emden/version.hpp"

namespace emden {

namespace {

using nlohmann::json;

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.path.empty()) {
    std::cout << text;
    return;
  }
  write_text_atomic(cfg.output.path, text);
}

json provenance_fields(const RunConfig& cfg) {
  return json{{"config_hash", cfg.config_hash()}, {"version", version_string}};
}

int cmd_spectrum(const RunConfig& cfg) {
  const DispersionModel m = load_material(cfg.material_path);
  const ThermalState state{cfg.temperature};
  CsvWriter csv({"omega", "eps_R", "eps_I", "n_R", "n_I", "v_g_over_c", "rho"});
  for (double w : cfg.grid()) {
    OpticalResponse r;
    double rho = 0.0;
    try {
      r = optical_response(m, w);
      rho = spectral_density(r, state).rho;
    } catch (const validation_error&) {
      // gap or band-edge row: no propagating mode, no group velocity
      r.omega = w;
      r.eps = eval_permittivity(m, w);
      r.mu = eval_permeability(m, w);
      const Index n = refractive_index(r.eps, r.mu);
      r.n_re = n.re;
      r.n_im = n.im;
      r.v_g = std::numeric_limits<double>::quiet_NaN();
      rho = (n.re == 0.0) ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    }
    const double row[7] = {w,      r.eps.real(), r.eps.imag(),        r.n_re,
                           r.n_im, r.v_g / c_light, rho};
    csv.add_row(row);
  }
  emit(cfg, csv.str());
  return 0;
}

int cmd_energy(const RunConfig& cfg) {
  const DispersionModel m = load_material(cfg.material_path);
  CsvWriter csv({"omega", "W_form_A", "W_form_B", "rel_diff", "w1_rate", "w2_rate",
                 "cutoff_residual"});
  for (double w : cfg.grid()) {
    const bool absorbing = eval_permittivity(m, w).imag() > 0.0;
    double w_a = 0.0, w1r = 0.0, w2r = 0.0, resid = 0.0;
    if (absorbing) {
      const EnergyBreakdown b = energy_breakdown(m, w, RegularizationConfig{cfg.regularization_a});
      w_a = b.total;
      w1r = b.w1_rate;
      w2r = b.w2_rate;
      resid = b.cutoff_residual;
    } else {
      w_a = total_energy_spectrum(m, w);
    }
    const double w_b = total_energy_spectrum_nonabsorbing_form(m, w);
    const double scale = std::max(std::abs(w_a), std::abs(w_b));
    const double rel = scale > 0.0 ? std::abs(w_a - w_b) / scale : 0.0;
    const double row[7] = {w, w_a, w_b, rel, w1r, w2r, resid};
    csv.add_row(row);
  }
  emit(cfg, csv.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const DispersionModel m = load_material(cfg.material_path);
  const auto grid = cfg.grid();
  const auto checks = run_verification(m, grid, cfg.regularization_a);
  json report = json::array();
  const json prov = provenance_fields(cfg);
  for (const auto& c : checks) {
    json rec = {{"check_name", c.check_name},
                {"max_error", c.max_error},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
    rec.update(prov);
    report.push_back(rec);
  }
  emit(cfg, report.dump(2) + "\n");
  return all_pass(checks) ? 0 : 2;
}

int cmd_kk_check(const RunConfig& cfg) {
  const DispersionModel m = load_material(cfg.material_path);
  const auto grid = cfg.grid();
  const KramersKronigResult kk = kramers_kronig_residual(m, grid);
  json report = json::array();
  const json prov = provenance_fields(cfg);
  json rec = {{"check_name", "kramers_kronig_residual"},
              {"max_error", kk.max_residual},
              {"coarse_grid_residual", kk.coarse_residual},
              {"converged", kk.converged},
              {"pass", kk.causal}};
  rec.update(prov);
  report.push_back(rec);
  emit(cfg, report.dump(2) + "\n");
  return kk.causal ? 0 : 2;
}

int cmd_simulate(const RunConfig& cfg, double omega_c_factor) {
  const DispersionModel m = load_material(cfg.material_path);
  if (m.eps.kind != MaterialKind::Lorentz)
    throw validation_error("simulate: the oscillator ensemble needs a lorentz material");
  OscillatorParams p;
  p.m = 1.0;
  p.omega_p = m.eps.omega_p;
  p.omega_0 = m.eps.omega_0;
  p.gamma = m.eps.gamma;
  p.omega_c = omega_c_factor * m.eps.omega_0;

  SimulationConfig sim;
  sim.dt = cfg.sim.dt;
  sim.n_steps = cfg.sim.steps;
  sim.n_traj = cfg.sim.traj;
  sim.seed = cfg.sim.seed;

  const TrajectoryEnsemble ens = simulate_oscillator(p, cfg.temperature, sim);
  const Estimate e3 = ens.energy_3d();
  const double target = oscillator_energy_analytic(p, cfg.temperature);
  const double sigmas = e3.std_error > 0.0 ? (e3.mean - target) / e3.std_error : 0.0;

  json rec = {{"estimator", "oscillator_energy_3d"},
              {"value", e3.mean},
              {"std_error", e3.std_error},
              {"n", ens.n_traj},
              {"analytic_target", target},
              {"sigmas", sigmas}};
  rec.update(provenance_fields(cfg));

  if (cfg.output.format == "csv") {  // native form is the JSON estimator record
    CsvWriter csv({"value", "std_error", "n", "analytic_target", "sigmas"});
    const double row[5] = {e3.mean, e3.std_error, static_cast<double>(ens.n_traj), target,
                           sigmas};
    csv.add_row(row);
    emit(cfg, csv.str());
  } else {
    emit(cfg, rec.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"electromagnetic energy density in dispersive, absorbing media"};
  app.require_subcommand(1);

  std::string config_path;
  RunConfig cfg;
  double omega_c_factor = 50.0;

  // flag overrides; config file values are applied first, flags win
  std::optional<std::string> material, spacing, out_path, out_format;
  std::optional<double> omega_min, omega_max, temperature, reg_a, dt;
  std::optional<std::size_t> n_points, traj, steps;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--material,--model", material, "material model file (JSON)");
    sub->add_option("--omega-min", omega_min, "band lower edge");
    sub->add_option("--omega-max", omega_max, "band upper edge");
    sub->add_option("--points", n_points, "number of band points");
    sub->add_option("--spacing", spacing, "band spacing: log|linear");
    sub->add_option("--temp", temperature, "temperature (k_B = 1)");
    sub->add_option("--a", reg_a, "regularization cutoff length");
    sub->add_option("--traj", traj, "trajectories");
    sub->add_option("--steps", steps, "steps per trajectory");
    sub->add_option("--dt", dt, "time step");
    sub->add_option("--seed", seed, "root seed");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", out_format, "output format: csv|json");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "per-frequency optical response and rho");
  CLI::App* energy = app.add_subcommand("energy", "total energy spectral density, both forms");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite, emit a JSON report");
  CLI::App* simulate = app.add_subcommand("simulate", "Langevin oscillator ensemble estimator");
  CLI::App* kk = app.add_subcommand("kk-check", "Kramers-Kronig causality residual");
  for (CLI::App* sub : {spectrum, energy, verify, simulate, kk}) add_common(sub);
  simulate->add_option("--cutoff-factor", omega_c_factor, "omega_c / omega_0 for the reservoir");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
    if (material) cfg.material_path = *material;
    if (omega_min) cfg.band.omega_min = *omega_min;
    if (omega_max) cfg.band.omega_max = *omega_max;
    if (n_points) cfg.band.n_points = *n_points;
    if (spacing) cfg.band.spacing = *spacing;
    if (temperature) cfg.temperature = *temperature;
    if (reg_a) cfg.regularization_a = *reg_a;
    if (traj) cfg.sim.traj = *traj;
    if (steps) cfg.sim.steps = *steps;
    if (dt) cfg.sim.dt = *dt;
    if (seed) cfg.sim.seed = *seed;
    if (out_path) cfg.output.path = *out_path;
    if (out_format) cfg.output.format = *out_format;
    cfg.validate();
    if (cfg.material_path.empty()) throw validation_error("no material file given");

    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (energy->parsed()) return cmd_energy(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg, omega_c_factor);
    if (kk->parsed()) return cmd_kk_check(cfg);
    throw validation_error("unknown subcommand");
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tolerance_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace emden
