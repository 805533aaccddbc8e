#ifndef EMDEN_QED_SPECTRUM_HPP
#define EMDEN_QED_SPECTRUM_HPP

#include "emden/dispersion.hpp"

namespace emden {

struct ThermalState {
  double temperature = 0.0;  // k_B = 1

  // mean occupation 1/(exp(w/T) - 1); identically 0 at T = 0
  double occupation(double omega) const;
  // 1/2 + N(omega) == (1/2) coth(omega/2T)
  double half_plus_occupation(double omega) const { return 0.5 + occupation(omega); }
};

struct ZeroPointAmplitudes {
  double e_sq = 0.0;  // E^2_{lambda w} per polarization
  double h_sq = 0.0;  // H^2_{lambda w} per polarization
};

// E^2 = (hbar/pi c^3) mu_R n_R w^3, H^2 = (hbar/pi c^3) n_R^3 w^3 / mu_R.
// Refuses absorbing frequencies (same threshold idea as brillouin_density).
ZeroPointAmplitudes zero_point_amplitudes(const OpticalResponse& response,
                                          double absorption_threshold = 1e-3);

struct SpectralPoint {
  double rho = 0.0;
  bool anomalous = false;  // v_g <= 0; value still returned
};

// rho(w) = [n_R^2 w^3 / (pi^2 v_g c^2)] (1/2 + N(w))
SpectralPoint spectral_density(const OpticalResponse& response, const ThermalState& state);

struct BandDensity {
  double zero_point = 0.0;  // cutoff-dependent
  double thermal = 0.0;     // converges as omega_max -> infinity
  double total() const { return zero_point + thermal; }
};

// Adaptive quadrature of rho over [0, omega_max] for a transparent model,
// zero-point and thermal parts reported separately.
BandDensity total_density(const DispersionModel& m, const ThermalState& state, double omega_max,
                          double rel_tol = 1e-9);

// Spontaneous-emission rate in the medium over the free-space A coefficient.
double spontaneous_rate_ratio(const DispersionModel& m, double omega_0);

// Zero-point spectral density via analytic derivatives (the rho integrand at
// T = 0); shared with the absorbing-medium module where it reappears as the
// collapsed total-energy spectrum.
double zero_point_spectral_density(const DispersionModel& m, double omega);

}  // namespace emden

#endif
