#include "emden/qed_spectrum.hpp"

#include <cmath>

#include "emden/constants.hpp"
#include "emden/errors.hpp"
#include "emden/quadrature.hpp"

namespace emden {

double ThermalState::occupation(double omega) const {
  if (!(temperature >= 0.0)) throw validation_error("thermal state: T must be non-negative");
  if (temperature == 0.0 || !(omega > 0.0)) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

ZeroPointAmplitudes zero_point_amplitudes(const OpticalResponse& response,
                                          double absorption_threshold) {
  const double eps_ratio =
      std::abs(response.eps.imag()) / std::max(std::abs(response.eps.real()), 1e-300);
  const double mu_ratio =
      std::abs(response.mu.imag()) / std::max(std::abs(response.mu.real()), 1e-300);
  if (eps_ratio >= absorption_threshold || mu_ratio >= absorption_threshold)
    throw validation_error("zero_point_amplitudes: absorbing at this frequency");
  const double w3 = response.omega * response.omega * response.omega;
  const double mu_r = response.mu.real();
  const double n_r = response.n_re;
  ZeroPointAmplitudes out;
  out.e_sq = hbar / (pi * c_light * c_light * c_light) * mu_r * n_r * w3;
  out.h_sq = hbar / (pi * c_light * c_light * c_light) * n_r * n_r * n_r * w3 / mu_r;
  return out;
}

SpectralPoint spectral_density(const OpticalResponse& response, const ThermalState& state) {
  SpectralPoint out;
  const double w = response.omega;
  out.anomalous = !(response.v_g > 0.0);
  out.rho = hbar * response.n_re * response.n_re * w * w * w /
            (pi * pi * response.v_g * c_light * c_light) *
            state.half_plus_occupation(w);
  return out;
}

double zero_point_spectral_density(const DispersionModel& m, double omega) {
  const complexd eps = eval_permittivity(m, omega);
  const complexd mu = eval_permeability(m, omega);
  const Index n = refractive_index(eps, mu);
  // d(w n_R)/dw via the analytic derivative chain; n == 0 (full gap) carries
  // no propagating modes and contributes nothing.
  if (n.re == 0.0 && n.im > 0.0) return 0.0;
  const complexd nc(n.re, n.im);
  const complexd dn =
      (eval_response_derivative(m.eps, omega) * mu + eps * eval_response_derivative(m.mu, omega)) /
      (2.0 * nc);
  const double group_index = n.re + omega * dn.real();
  const double w3 = omega * omega * omega;
  return hbar * w3 * n.re * n.re * group_index / (2.0 * pi * pi * c_light * c_light * c_light);
}

BandDensity total_density(const DispersionModel& m, const ThermalState& state, double omega_max,
                          double rel_tol) {
  if (!(omega_max > 0.0)) throw validation_error("total_density: omega_max must be positive");
  auto check_transparent = [&](double w) {
    const complexd eps = eval_permittivity(m, w);
    if (std::abs(eps.imag()) > 1e-12 * std::max(1.0, std::abs(eps.real())))
      throw validation_error("total_density: model absorbs inside [0, omega_max]");
  };
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_intervals = 20000;

  BandDensity out;
  out.zero_point = integrate(
      [&](double w) {
        if (w <= 0.0) return 0.0;
        check_transparent(w);
        return zero_point_spectral_density(m, w);
      },
      0.0, omega_max, opt);
  if (state.temperature > 0.0) {
    out.thermal = integrate(
        [&](double w) {
          if (w <= 0.0) return 0.0;
          return zero_point_spectral_density(m, w) * 2.0 * state.occupation(w);
        },
        0.0, omega_max, opt);
  }
  return out;
}

double spontaneous_rate_ratio(const DispersionModel& m, double omega_0) {
  if (!(omega_0 > 0.0)) throw validation_error("spontaneous_rate_ratio: omega_0 must be positive");
  return refractive_index(eval_permittivity(m, omega_0), eval_permeability(m, omega_0)).re;
}

}  // namespace emden
