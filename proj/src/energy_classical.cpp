#include "emden/energy_classical.hpp"

#include <cmath>

#include "emden/constants.hpp"
#include "emden/errors.hpp"
#include "emden/quadrature.hpp"

namespace emden {

PoyntingKernel poynting_kernel(const DispersionModel& m, double omega, double omega_prime) {
  if (!(omega > 0.0) || !(omega_prime > 0.0))
    throw validation_error("poynting_kernel: frequencies must be positive");
  PoyntingKernel k;
  const complexd eps_w = eval_permittivity(m, omega);
  const complexd eps_wp = eval_permittivity(m, omega_prime);
  if (std::abs(omega_prime - omega) < 1e-9 * omega) {
    // analytic coincidence limit d(w eps_R)/dw
    const complexd deps = eval_response_derivative(m.eps, omega);
    k.regular = (eps_w + omega * deps).real();
  } else {
    k.regular = (omega_prime * eps_wp.real() - omega * eps_w.real()) / (omega_prime - omega);
  }
  k.heat = 0.5 * (omega * eps_w.imag() + omega_prime * eps_wp.imag());
  return k;
}

double brillouin_density(const OpticalResponse& response, double d_omega_eps_r,
                         double d_omega_mu_r, double e2, double h2,
                         double absorption_threshold) {
  const double eps_ratio = std::abs(response.eps.imag()) / std::max(std::abs(response.eps.real()), 1e-300);
  const double mu_ratio = std::abs(response.mu.imag()) / std::max(std::abs(response.mu.real()), 1e-300);
  if (eps_ratio >= absorption_threshold || mu_ratio >= absorption_threshold)
    throw validation_error(
        "brillouin_density: absorption is not negligible at this frequency; "
        "use the absorbing-medium energy spectrum instead");
  if (!(e2 >= 0.0) || !(h2 >= 0.0))
    throw validation_error("brillouin_density: squared amplitudes must be non-negative");
  return (d_omega_eps_r * e2 + d_omega_mu_r * h2) / (16.0 * pi);
}

QuasimonoEnergy quasimono_energy(const DispersionModel& m, double omega_0, double e0_sq,
                                 double h0_sq, double t) {
  if (!(t >= 0.0)) throw validation_error("quasimono_energy: t must be non-negative");
  const complexd eps = eval_permittivity(m, omega_0);
  const complexd mu = eval_permeability(m, omega_0);
  const double dwe = (eps + omega_0 * eval_response_derivative(m.eps, omega_0)).real();
  const double dwm = (mu + omega_0 * eval_response_derivative(m.mu, omega_0)).real();
  QuasimonoEnergy out;
  out.stored = (dwe * e0_sq + dwm * h0_sq) / (16.0 * pi);
  out.heat = omega_0 * t * (eps.imag() * e0_sq + mu.imag() * h0_sq) / (8.0 * pi);
  return out;
}

double ensemble_spectral_integrand(const DispersionModel& m,
                                   const std::function<double(double)>& spectrum_e,
                                   const std::function<double(double)>& spectrum_h, double omega) {
  const complexd eps = eval_permittivity(m, omega);
  const complexd mu = eval_permeability(m, omega);
  if (std::abs(eps.imag()) > 1e-12 * std::max(1.0, std::abs(eps.real())) ||
      std::abs(mu.imag()) > 1e-12 * std::max(1.0, std::abs(mu.real())))
    throw validation_error("ensemble_density: absorbing model on the spectral support refused");
  const double dwe = (eps + omega * eval_response_derivative(m.eps, omega)).real();
  const double dwm = (mu + omega * eval_response_derivative(m.mu, omega)).real();
  return (dwe * spectrum_e(omega) + dwm * spectrum_h(omega)) / (16.0 * pi);
}

double ensemble_density(const DispersionModel& m,
                        const std::function<double(double)>& spectrum_e,
                        const std::function<double(double)>& spectrum_h,
                        std::span<const double> grid) {
  if (grid.size() < 2) throw validation_error("ensemble_density: grid too small");
  auto f = [&](double w) { return ensemble_spectral_integrand(m, spectrum_e, spectrum_h, w); };
  return integrate_on_grid(f, grid.data(), grid.size());
}

// ------------------------------------------------------------------- ledger

namespace {

// Work in the scaled coordinate u = (m/e) x, so the single-particle equation
// udd + gamma ud + w0^2 u = E_w cos(w t) needs no e or m, and all densities
// enter through N e^2/m = omega_p^2 / 4pi.
struct LedgerScales {
  double coupling;  // omega_p^2 / 4pi = N e^2 / m
  double h_amp;     // plane-wave magnetic amplitude sqrt(max(eps_R, 0)) E_w
};

LedgerScales make_scales(const OscillatorParams& p, const MonochromaticDrive& d) {
  LedgerScales s;
  s.coupling = p.omega_p * p.omega_p / (4.0 * pi);
  const complexd eps = eval_permittivity(lorentz_model(p.omega_p, p.omega_0, p.gamma), d.omega);
  s.h_amp = (eps.real() > 0.0) ? std::sqrt(eps.real()) * d.e_amp : 0.0;
  return s;
}

LedgerSample book(const OscillatorParams& p, const MonochromaticDrive& d, const LedgerScales& s,
                  double t, double u, double v) {
  LedgerSample row;
  row.t = t;
  row.kinetic = 0.5 * s.coupling * v * v;
  row.potential = 0.5 * s.coupling * p.omega_0 * p.omega_0 * u * u;
  const double e_t = d.e_amp * std::cos(d.omega * t);
  const double h_t = s.h_amp * std::cos(d.omega * t);
  row.field = (e_t * e_t + h_t * h_t) / (8.0 * pi);
  row.dissipated_rate = 2.0 * p.gamma * row.kinetic;
  row.drive_power = s.coupling * e_t * v;
  return row;
}

}  // namespace

LedgerSeries simulate_classical_oscillator_ledger(const OscillatorParams& params,
                                                  const MonochromaticDrive& drive, double t_end,
                                                  double dt, LedgerStart start) {
  params.validate_underdamped();
  if (!(drive.omega > 0.0)) throw validation_error("ledger: drive frequency must be positive");
  if (!(t_end > 0.0) || !(dt > 0.0)) throw validation_error("ledger: t_end and dt must be positive");
  if (params.gamma == 0.0 && drive.omega == params.omega_0)
    throw validation_error("ledger: undamped resonance diverges (omega == omega_0, gamma == 0)");
  const double fastest = std::max(drive.omega, params.omega_0);
  if (dt > 2.0 * pi / (40.0 * fastest))
    throw validation_error("ledger: dt too coarse; need at least 40 steps per period");

  const LedgerScales scales = make_scales(params, drive);
  const double w = drive.omega;
  const double w0sq = params.omega_0 * params.omega_0;
  const double g = params.gamma;

  double u = 0.0, v = 0.0;
  if (start == LedgerStart::SteadyState) {
    const complexd den(w0sq - w * w, -g * w);
    const complexd uhat = drive.e_amp / den;  // u(t) = Re[uhat e^{-iwt}]
    u = uhat.real();
    v = w * uhat.imag();
  }

  const auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
  const double damp = std::exp(-g * dt);
  auto acc = [&](double uu, double t) { return drive.e_amp * std::cos(w * t) - w0sq * uu; };

  LedgerSeries series;
  series.rows.reserve(n_steps + 1);
  series.rows.push_back(book(params, drive, scales, 0.0, u, v));
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    v += 0.5 * dt * acc(u, t);
    u += 0.5 * dt * v;
    v *= damp;
    u += 0.5 * dt * v;
    v += 0.5 * dt * acc(u, t + dt);
    series.rows.push_back(book(params, drive, scales, t + dt, u, v));
  }
  return series;
}

LedgerSample LedgerSeries::average(double t_from, double t_to) const {
  if (rows.size() < 2) throw validation_error("ledger average: empty series");
  const double dt = rows[1].t - rows[0].t;
  auto idx = [&](double t) {
    auto i = static_cast<long long>(std::llround((t - rows.front().t) / dt));
    if (i < 0 || static_cast<std::size_t>(i) >= rows.size())
      throw validation_error("ledger average: window outside the simulated range");
    return static_cast<std::size_t>(i);
  };
  const std::size_t a = idx(t_from);
  const std::size_t b = idx(t_to);
  if (b <= a + 1) throw validation_error("ledger average: window too narrow");

  LedgerSample avg;
  avg.t = 0.5 * (rows[a].t + rows[b].t);
  double wsum = 0.0;
  for (std::size_t i = a; i <= b; ++i) {
    const double wgt = (i == a || i == b) ? 0.5 : 1.0;
    avg.kinetic += wgt * rows[i].kinetic;
    avg.potential += wgt * rows[i].potential;
    avg.field += wgt * rows[i].field;
    avg.dissipated_rate += wgt * rows[i].dissipated_rate;
    avg.drive_power += wgt * rows[i].drive_power;
    wsum += wgt;
  }
  avg.kinetic /= wsum;
  avg.potential /= wsum;
  avg.field /= wsum;
  avg.dissipated_rate /= wsum;
  avg.drive_power /= wsum;
  return avg;
}

double envelope_derivative_heat_term(const DispersionModel& m, double omega_0,
                                     const std::function<complexd(double)>& envelope,
                                     double t_from, double t, double h) {
  if (!(t >= t_from)) throw validation_error("envelope heat term: t must follow t_from");
  if (!(h > 0.0)) throw validation_error("envelope heat term: step must be positive");
  const double d_omega_eps_i =
      (eval_permittivity(m, omega_0) + omega_0 * eval_response_derivative(m.eps, omega_0)).imag();
  auto integrand = [&](double s) {
    auto deriv = [&](double step) { return (envelope(s + step) - envelope(s - step)) / (2.0 * step); };
    const complexd d1 = deriv(h);
    const complexd d2 = deriv(0.5 * h);
    const complexd de = (4.0 * d2 - d1) / 3.0;
    return -2.0 * std::imag(de * std::conj(envelope(s)));
  };
  QuadOptions opt;
  opt.rel_tol = 1e-10;
  opt.max_intervals = 20000;
  return d_omega_eps_i / (16.0 * pi) * integrate(integrand, t_from, t, opt);
}

LedgerSample steady_state_cycle_average(const OscillatorParams& params,
                                        const MonochromaticDrive& drive) {
  params.validate_underdamped();
  const double w = drive.omega;
  const double w0sq = params.omega_0 * params.omega_0;
  if (params.gamma == 0.0 && w * w == w0sq)
    throw validation_error("steady state: undamped resonance");
  const LedgerScales scales = make_scales(params, drive);
  const complexd den(w0sq - w * w, -params.gamma * w);
  const complexd uhat = drive.e_amp / den;
  const double u2 = 0.5 * std::norm(uhat);       // <u^2>
  const double v2 = 0.5 * w * w * std::norm(uhat);  // <udot^2>

  LedgerSample avg;
  avg.kinetic = 0.5 * scales.coupling * v2;
  avg.potential = 0.5 * scales.coupling * w0sq * u2;
  avg.field = (drive.e_amp * drive.e_amp + scales.h_amp * scales.h_amp) / (16.0 * pi);
  avg.dissipated_rate = 2.0 * params.gamma * avg.kinetic;
  avg.drive_power = 0.5 * scales.coupling * drive.e_amp * w * uhat.imag();
  return avg;
}

}  // namespace emden
