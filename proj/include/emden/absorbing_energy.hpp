#ifndef EMDEN_ABSORBING_ENERGY_HPP
#define EMDEN_ABSORBING_ENERGY_HPP

#include "emden/dispersion.hpp"
#include "emden/qed_spectrum.hpp"

namespace emden {

enum class CutoffScheme { Lorentzian };  // the finite part is scheme-dependent in principle

struct RegularizationConfig {
  double a = 1e-4;  // interatomic-scale cutoff length
  CutoffScheme scheme = CutoffScheme::Lorentzian;

  void validate(double omega_max) const;  // enforces a * omega_max / c < 0.01
};

// int_0^inf 4 pi k^2 dk / |k^2 - eps w^2/c^2|^2  ==  2 pi^2 c n_R / (eps_I w).
// Requires eps_I > 0 (the transparent limit has an on-shell pole).
double green_norm_integral(complexd eps, double omega);
// Same integral by adaptive quadrature in s = ck/w on [0, s_max] with the
// analytic 1/s^2 tail beyond; cross-check route for the closed form.
double green_norm_integral_quad(complexd eps, double omega, double rel_tol = 1e-10,
                                double s_max = 50.0);

// lim_{a->0} int d^3k (k^2 - eps w^2/c^2)^{-1} (1 + k^2 a^2)^{-1}
//   = 2 pi^2 / a + 2 pi^2 i (w/c) sqrt(eps)       (small-a closed form)
complexd regularized_k_integral(complexd eps, double omega, const RegularizationConfig& reg);
// Finite-a numerical evaluation of the same integral (t = a k substitution,
// arctan tail); agrees with the closed form to O(a w / c).
complexd regularized_k_integral_quad(complexd eps, double omega, double a,
                                     double rel_tol = 1e-10);

// All spectral densities below are per unit frequency, polarization sum done
// (Sigma_lambda -> 2 for isotropic media), in energy-density units except
// e_field_spectrum which is the bare <E^2> spectral density.

// d<E^2>/dw = (2 hbar / pi c^3) w^3 n_R
double e_field_spectrum(const DispersionModel& m, double omega);
// the k-integral route through green_norm_integral_quad (test oracle)
double e_field_spectrum_quad(const DispersionModel& m, double omega, double rel_tol = 1e-12);

struct HFieldSpectrum {
  double finite = 0.0;  // (hbar/4 pi^2 c^3) w^3 Re eps^{3/2}
  double cutoff = 0.0;  // (hbar/4 pi^2 c^3) w^2 eps_I c / a
  double total() const { return finite + cutoff; }
};

// (1/8pi) <H^2> spectral density, split into its finite and 1/a parts.
HFieldSpectrum h_field_spectrum(const DispersionModel& m, double omega,
                                const RegularizationConfig& reg);

struct W1Spectrum {
  double static_part = 0.0;  // E-part + full (1/8pi)<H^2> (includes the 1/a term)
  double rate = 0.0;         // (hbar/2 pi^2 c^3) w^4 n_R eps_I, > 0 for eps_I > 0
};

W1Spectrum w1_spectrum(const DispersionModel& m, double omega, const RegularizationConfig& reg);

struct W2Spectrum {
  double static_cutoff = 0.0;  // -(hbar/4 pi^2 c^2) w^2 eps_I / a
  double static_finite = 0.0;  // (hbar/4 pi^2 c^3) w^2 eps_I Im d(w^2 sqrt(eps))/dw
  double rate = 0.0;           // cancels w1.rate; computed via the k-integral route
};

W2Spectrum w2_spectrum(const DispersionModel& m, double omega, const RegularizationConfig& reg);

struct EnergyBreakdown {
  double w1_static_e = 0.0;
  double h_field_finite = 0.0;
  double h_field_cutoff = 0.0;
  double w1_rate = 0.0;
  double w2_static_cutoff = 0.0;
  double w2_static_finite = 0.0;
  double w2_rate = 0.0;
  double cutoff_residual = 0.0;  // h_field_cutoff + w2_static_cutoff
  double rate_residual = 0.0;    // w1_rate + w2_rate
  double total = 0.0;            // all static parts, cutoff terms included
};

EnergyBreakdown energy_breakdown(const DispersionModel& m, double omega,
                                 const RegularizationConfig& reg);

// The assembled total-energy spectral density (cutoff terms cancelled).
double total_energy_spectrum(const DispersionModel& m, double omega);
// The collapsed non-absorbing form it must equal pointwise:
// (hbar/2 pi^2 c^3) w^3 n_R^2 d(w n_R)/dw.
double total_energy_spectrum_nonabsorbing_form(const DispersionModel& m, double omega);

struct ThermalBandOptions {
  bool include_zero_point = true;
  double rel_tol = 1e-9;
};

// Band integral of the total spectrum with the thermal coth factor applied on
// the zero-point spectral form: rho(w; T) = rho_zp(w) * coth(w / 2T).
double thermal_total_energy(const DispersionModel& m, double omega_min, double omega_max,
                            double temperature, const ThermalBandOptions& opt = {});

}  // namespace emden

#endif
