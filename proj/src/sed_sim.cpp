#include "emden/sed_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <thread>

#include "emden/constants.hpp"
#include "emden/errors.hpp"
#include "emden/fft.hpp"
#include "emden/quadrature.hpp"
#include "emden/rng.hpp"

namespace emden {

namespace {

double coth_half(double omega, double temperature) {
  // coth(w/2T) = 1 + 2 N(w); ->1 at T=0, -> 2T/w classically
  if (temperature <= 0.0) return 1.0;
  if (omega <= 0.0) return 0.0;
  return 1.0 + 2.0 / std::expm1(omega / temperature);
}

}  // namespace

double langevin_force_spectrum(const OscillatorParams& params, double temperature, double omega) {
  params.validate_underdamped();
  params.validate_cutoff();
  if (!(omega >= 0.0)) throw validation_error("langevin_force_spectrum: omega must be >= 0");
  if (omega >= params.omega_c) return 0.0;  // hard UV cutoff
  if (omega == 0.0) return temperature > 0.0 ? 2.0 * params.m * params.gamma * temperature / pi : 0.0;
  return params.m * params.gamma / pi * omega * coth_half(omega, temperature);
}

std::vector<double> synthesize_langevin_force(const OscillatorParams& params, double temperature,
                                              double dt, std::size_t n_fft, std::uint64_t seed) {
  if (!is_power_of_two(n_fft))
    throw validation_error("synthesize_langevin_force: n_fft must be a power of two");
  if (!(dt > 0.0)) throw validation_error("synthesize_langevin_force: dt must be positive");
  const double domega = 2.0 * pi / (static_cast<double>(n_fft) * dt);

  // F_j = sum_k sqrt(S_F(w_k) dw) [xi_k cos(w_k t_j) + eta_k sin(w_k t_j)]
  //     = Re FFT of conj coefficients; DC and Nyquist carry no weight.
  std::vector<std::complex<double>> coef(n_fft, {0.0, 0.0});
  NormalStream rng(seed);
  for (std::size_t k = 1; k < n_fft / 2; ++k) {
    const double w = domega * static_cast<double>(k);
    const double s = langevin_force_spectrum(params, temperature, w);
    const double xi = rng.next();
    const double eta = rng.next();
    if (s <= 0.0) continue;
    const double amp = std::sqrt(s * domega);
    coef[k] = {amp * xi, amp * eta};  // conj(xi - i eta)
  }
  fft(coef, false);
  std::vector<double> force(n_fft);
  for (std::size_t j = 0; j < n_fft; ++j) force[j] = coef[j].real();
  return force;
}

namespace {

TrajectoryStats integrate_one(const OscillatorParams& p, double temperature,
                              const SimulationConfig& cfg, std::uint64_t traj_seed,
                              std::size_t burn_in_steps) {
  const std::size_t n_fft = next_power_of_two(cfg.n_steps + 1);
  const std::vector<double> force = synthesize_langevin_force(p, temperature, cfg.dt, n_fft,
                                                              traj_seed);
  const double dt = cfg.dt;
  const double w0sq = p.omega_0 * p.omega_0;
  const double damp = std::exp(-p.gamma * dt);
  const double inv_m = 1.0 / p.m;

  TrajectoryStats st;
  st.snapshots.reserve(cfg.snapshot_steps.size());
  auto snap_it = cfg.snapshot_steps.begin();

  double x = 0.0, v = 0.0;
  std::size_t measured = 0;
  for (std::size_t j = 0; j < cfg.n_steps; ++j) {
    v += 0.5 * dt * (force[j] * inv_m - w0sq * x);
    x += 0.5 * dt * v;
    v *= damp;
    x += 0.5 * dt * v;
    v += 0.5 * dt * (force[j + 1] * inv_m - w0sq * x);

    const std::size_t step = j + 1;
    while (snap_it != cfg.snapshot_steps.end() && *snap_it == step) {
      st.snapshots.push_back(x);
      ++snap_it;
    }
    if (step > burn_in_steps) {
      st.kinetic += 0.5 * p.m * v * v;
      st.potential += 0.5 * p.m * w0sq * x * x;
      st.noise_power += force[step] * v;
      st.diss_power += p.gamma * p.m * v * v;
      ++measured;
    }
  }
  if (measured == 0) throw validation_error("simulate_oscillator: nothing measured after burn-in");
  const double inv = 1.0 / static_cast<double>(measured);
  st.kinetic *= inv;
  st.potential *= inv;
  st.noise_power *= inv;
  st.diss_power *= inv;
  return st;
}

Estimate batch_estimate(const std::vector<TrajectoryStats>& traj,
                        double (*pick)(const TrajectoryStats&)) {
  const std::size_t n = traj.size();
  double mean = 0.0;
  for (const auto& t : traj) mean += pick(t);
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const auto& t : traj) {
    const double d = pick(t) - mean;
    var += d * d;
  }
  var /= static_cast<double>(n > 1 ? n - 1 : 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

Estimate TrajectoryEnsemble::energy() const {
  return batch_estimate(traj, [](const TrajectoryStats& t) { return t.energy(); });
}
Estimate TrajectoryEnsemble::kinetic() const {
  return batch_estimate(traj, [](const TrajectoryStats& t) { return t.kinetic; });
}
Estimate TrajectoryEnsemble::potential() const {
  return batch_estimate(traj, [](const TrajectoryStats& t) { return t.potential; });
}
Estimate TrajectoryEnsemble::noise_power() const {
  return batch_estimate(traj, [](const TrajectoryStats& t) { return t.noise_power; });
}
Estimate TrajectoryEnsemble::diss_power() const {
  return batch_estimate(traj, [](const TrajectoryStats& t) { return t.diss_power; });
}
Estimate TrajectoryEnsemble::power_imbalance() const {
  return batch_estimate(traj,
                        [](const TrajectoryStats& t) { return t.noise_power - t.diss_power; });
}
Estimate TrajectoryEnsemble::energy_3d() const {
  Estimate e = energy();
  return {3.0 * e.mean, 3.0 * e.std_error};
}

TrajectoryEnsemble simulate_oscillator(const OscillatorParams& params, double temperature,
                                       const SimulationConfig& cfg) {
  params.validate_underdamped();
  params.validate_cutoff();
  if (params.gamma <= 0.0)
    throw validation_error("simulate_oscillator: gamma = 0 has no stationary state under noise");
  if (!(cfg.dt > 0.0) || cfg.n_steps == 0 || cfg.n_traj == 0)
    throw validation_error("simulate_oscillator: dt, n_steps, n_traj must be positive");
  if (!(cfg.dt * params.omega_c < 0.5))
    throw validation_error("simulate_oscillator: dt*omega_c must stay below 0.5");
  if (!std::is_sorted(cfg.snapshot_steps.begin(), cfg.snapshot_steps.end()))
    throw validation_error("simulate_oscillator: snapshot steps must be sorted");

  const double burn_time = cfg.burn_in_time >= 0.0 ? cfg.burn_in_time : 10.0 / params.gamma;
  const auto burn_in_steps = static_cast<std::size_t>(burn_time / cfg.dt);
  if (burn_in_steps >= cfg.n_steps)
    throw validation_error("simulate_oscillator: burn-in swallows the whole trajectory");

  TrajectoryEnsemble out;
  out.n_traj = cfg.n_traj;
  out.n_measured = cfg.n_steps - burn_in_steps;
  out.traj.resize(cfg.n_traj);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = cfg.n_threads > 0 ? static_cast<unsigned>(cfg.n_threads) : hw;
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.n_traj) break;
      const std::uint64_t traj_seed = mix_key(cfg.seed, 0x74726a0000ULL + i);
      out.traj[i] = integrate_one(params, temperature, cfg, traj_seed, burn_in_steps);
    }
  };
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

double oscillator_energy_analytic(const OscillatorParams& params, double temperature,
                                  double rel_tol) {
  params.validate_underdamped();
  params.validate_cutoff();
  const double w0 = params.omega_0;
  const double g = params.gamma;
  auto integrand = [&](double w) {
    const double d1 = w0 * w0 - w * w;
    const double den = d1 * d1 + g * g * w * w;
    return w * (w0 * w0 + w * w) * 0.5 * coth_half(w, temperature) / den;
  };
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_intervals = 40000;
  // split at the resonance shoulder so the peak panels refine locally
  const double split = std::min(4.0 * w0, params.omega_c);
  double val = integrate(integrand, 0.0, split, opt);
  if (split < params.omega_c) val += integrate(integrand, split, params.omega_c, opt);
  return 3.0 * hbar * g / pi * val;
}

double oscillator_zero_point_closed(const OscillatorParams& params) {
  params.validate_underdamped();
  params.validate_cutoff();
  const double w1 = params.omega_1();
  return 3.0 * hbar / pi * w1 * std::acos(params.gamma / (2.0 * params.omega_0)) +
         3.0 * hbar * params.gamma / (2.0 * pi) * std::log(params.omega_c / params.omega_0);
}

double commutator_envelope(const OscillatorParams& params, double tau) {
  params.validate_underdamped();
  const double at = std::abs(tau);
  if (params.gamma > 0.0 && !(at < 50.0 / params.gamma))
    throw validation_error("commutator_envelope: |tau| beyond 50/gamma");
  const double w1 = params.omega_1();
  return (std::cos(w1 * tau) - params.gamma / (2.0 * w1) * std::sin(w1 * at)) *
         std::exp(-params.gamma * at / 2.0);
}

double commutator_envelope_quadrature(const OscillatorParams& params, double tau,
                                      double abs_tol) {
  params.validate_underdamped();
  if (!(params.gamma > 0.0))
    throw validation_error("commutator quadrature: gamma = 0 puts the pole on the real axis");
  const double w0 = params.omega_0;
  const double g = params.gamma;
  const double at = std::abs(tau);
  auto f = [&](double w) {
    const double d1 = w0 * w0 - w * w;
    return w * w * std::cos(w * at) / (d1 * d1 + g * g * w * w);
  };

  QuadOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-3 * abs_tol;
  opt.max_intervals = 40000;
  const double head_end = 6.0 * w0;
  double sum = integrate(f, 0.0, head_end, opt);

  if (at * w0 < 1e-9) {
    // no oscillation: adaptive mid-range plus the asymptotic series tail of
    // w^2/D = w^-2 (1 + c1 w^-2 + (c1^2 - w0^4) w^-4 + ...)
    const double far = 400.0 * w0;
    sum += integrate(f, head_end, far, opt);
    const double c1 = 2.0 * w0 * w0 - g * g;
    const double c2 = c1 * c1 - w0 * w0 * w0 * w0;
    sum += 1.0 / far + c1 / (3.0 * far * far * far) + c2 / (5.0 * std::pow(far, 5));
  } else {
    // alternating half-period panels; iterated averaging of the partial sums
    // accelerates the bracketing sequence (the envelope decays monotonically)
    const double width = pi / at;
    std::vector<double> partial;
    partial.reserve(512);
    double acc = 0.0;
    double a = head_end;
    const std::size_t max_panels = 30000;
    for (std::size_t i = 0; i < max_panels; ++i) {
      const double b = a + width;
      const double piece = gk15_panel(f, a, b);
      acc += piece;
      partial.push_back(acc);
      a = b;
      if (i > 8 && std::abs(piece) < 0.05 * abs_tol) break;
    }
    std::vector<double> s(partial.end() -
                              static_cast<std::ptrdiff_t>(std::min<std::size_t>(partial.size(), 24)),
                          partial.end());
    while (s.size() > 1) {
      for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
      s.pop_back();
    }
    sum += s.front();
  }
  return 2.0 * g / pi * sum;
}

// ------------------------------------------------------- noise polarization

double RadialKGrid::cell_volume(std::size_t i) const {
  const double k = center(i);
  return 4.0 * pi * k * k * dk();
}

NoisePolarizationEnsemble::NoisePolarizationEnsemble(const DispersionModel& m,
                                                     const RadialKGrid& kgrid,
                                                     const FrequencyGrid& wgrid,
                                                     double temperature, std::size_t n_real,
                                                     std::uint64_t seed)
    : model_(m), kgrid_(kgrid), wgrid_(wgrid), temperature_(temperature), n_real_(n_real),
      seed_(seed) {
  if (kgrid_.n == 0 || wgrid_.n == 0 || !(kgrid_.dk() > 0.0) || !(wgrid_.dw() > 0.0))
    throw validation_error("noise polarization: degenerate grid");
  if (n_real_ == 0) throw validation_error("noise polarization: need at least one realization");
  cell_sigma_.resize(kgrid_.n * wgrid_.n);
  for (std::size_t iw = 0; iw < wgrid_.n; ++iw) {
    const double w = wgrid_.center(iw);
    const complexd eps = eval_permittivity(model_, w);
    if (!(eps.imag() > 0.0))
      throw validation_error("noise polarization: eps_I must be positive on the frequency grid");
    const double occ = 0.5 * coth_half(w, temperature_);
    for (std::size_t ik = 0; ik < kgrid_.n; ++ik) {
      const double var = hbar / (2.0 * pi * pi * pi) * eps.imag() * occ /
                         (wgrid_.dw() * kgrid_.cell_volume(ik));
      cell_sigma_[iw * kgrid_.n + ik] = std::sqrt(var);
    }
  }
}

double NoisePolarizationEnsemble::cell_variance(std::size_t ik, std::size_t iw) const {
  const double s = cell_sigma_.at(iw * kgrid_.n + ik);
  return s * s;
}

complexd NoisePolarizationEnsemble::amplitude(std::size_t realization, std::size_t ik, int lambda,
                                              std::size_t iw) const {
  if (realization >= n_real_ || ik >= kgrid_.n || iw >= wgrid_.n || lambda < 0 || lambda > 1)
    throw validation_error("noise polarization: cell index out of range");
  const double sigma = cell_sigma_[iw * kgrid_.n + ik];
  const std::uint64_t key = mix_key(seed_, 0x6e6f6973ULL + iw);
  const std::uint64_t counter =
      (static_cast<std::uint64_t>(realization) * kgrid_.n + ik) * 2ULL +
      static_cast<std::uint64_t>(lambda);
  double z0 = 0.0, z1 = 0.0;
  counter_normal_pair(key, counter, z0, z1);
  return sigma / std::sqrt(2.0) * complexd(z0, z1);
}

NoisePolarizationEnsemble sample_noise_polarization(const DispersionModel& m,
                                                    const RadialKGrid& kgrid,
                                                    const FrequencyGrid& wgrid,
                                                    double temperature, std::size_t n_real,
                                                    std::uint64_t seed) {
  return NoisePolarizationEnsemble(m, kgrid, wgrid, temperature, n_real, seed);
}

FieldSpectrumEstimate reconstruct_field_spectrum(const NoisePolarizationEnsemble& ens,
                                                 int n_threads) {
  const RadialKGrid& kg = ens.kgrid();
  const FrequencyGrid& wg = ens.wgrid();
  FieldSpectrumEstimate out;
  out.omega.resize(wg.n);
  out.value.resize(wg.n);
  out.std_error.resize(wg.n);

  double worst_shell_cells = 1e300;
  double worst_tail = 0.0;

  for (std::size_t iw = 0; iw < wg.n; ++iw) {
    const double w = wg.center(iw);
    out.omega[iw] = w;
    const complexd eps = eval_permittivity(ens.model(), w);
    const complexd z = eps * w * w / (c_light * c_light);
    const double n_r = refractive_index(eps).re;

    // shell resolution and truncation diagnostics
    const double shell_dk = eps.imag() * w / (2.0 * std::max(n_r, 1e-12) * c_light);
    worst_shell_cells = std::min(worst_shell_cells, shell_dk / kg.dk());
    worst_tail = std::max(worst_tail,
                          2.0 * eps.imag() * w / (pi * c_light * std::max(n_r, 1e-12) * kg.k_max));

    // per-realization spectrum samples, reduced serially for determinism
    std::vector<double> per_real(ens.n_real());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nt = n_threads > 0 ? static_cast<unsigned>(n_threads) : hw;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t r = next.fetch_add(1);
        if (r >= ens.n_real()) break;
        complexd e_lambda[2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (std::size_t ik = 0; ik < kg.n; ++ik) {
          const double k = kg.center(ik);
          const complexd transfer = (w * w / (c_light * c_light)) / (complexd(k * k, 0.0) - z);
          const double dv = kg.cell_volume(ik);
          e_lambda[0] += transfer * ens.amplitude(r, ik, 0, iw) * dv;
          e_lambda[1] += transfer * ens.amplitude(r, ik, 1, iw) * dv;
        }
        per_real[r] = 2.0 * wg.dw() * (std::norm(e_lambda[0]) + std::norm(e_lambda[1]));
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    double mean = 0.0;
    for (double v : per_real) mean += v;
    mean /= static_cast<double>(per_real.size());
    double var = 0.0;
    for (double v : per_real) var += (v - mean) * (v - mean);
    var /= static_cast<double>(per_real.size() > 1 ? per_real.size() - 1 : 1);
    out.value[iw] = mean;
    out.std_error[iw] = std::sqrt(var / static_cast<double>(per_real.size()));
  }

  out.shell_cells = worst_shell_cells;
  out.tail_fraction = worst_tail;
  out.resolution_warning = worst_shell_cells < 4.0;
  return out;
}

}  // namespace emden
