#ifndef EMDEN_ENERGY_CLASSICAL_HPP
#define EMDEN_ENERGY_CLASSICAL_HPP

#include <functional>
#include <span>
#include <vector>

#include "emden/dispersion.hpp"
#include "emden/oscillator.hpp"

namespace emden {

// ------------------------------------------------------------ Poynting kernel

// Decomposition of [w' eps*(w') - w eps(w)] / (w' - w): the symmetrized real
// part (-> d(w eps_R)/dw at coincidence) and the heat coefficient that
// multiplies the secular (linear-in-t) term, returned as a plain coefficient
// rather than a divided difference.
struct PoyntingKernel {
  double regular = 0.0;
  double heat = 0.0;
};

PoyntingKernel poynting_kernel(const DispersionModel& m, double omega, double omega_prime);

// --------------------------------------------------------- stored energy forms

// (1/16pi) [ d(w eps_R)/dw |E|^2 + d(w mu_R)/dw |H|^2 ], valid where absorption
// is negligible. e2/h2 are squared field amplitudes. Refuses (throws
// validation_error) when eps_I/|eps_R| or mu_I/|mu_R| exceeds the threshold;
// absorbing media belong to the absorbing-energy machinery instead.
double brillouin_density(const OpticalResponse& response, double d_omega_eps_r,
                         double d_omega_mu_r, double e2, double h2,
                         double absorption_threshold = 1e-3);

struct QuasimonoEnergy {
  double stored = 0.0;  // first-order Brillouin storage at the carrier
  double heat = 0.0;    // secular heat deposited up to time t
};

QuasimonoEnergy quasimono_energy(const DispersionModel& m, double omega_0, double e0_sq,
                                 double h0_sq, double t);

// Spectral energy density integrand of the uncorrelated-frequency ensemble.
double ensemble_spectral_integrand(const DispersionModel& m,
                                   const std::function<double(double)>& spectrum_e,
                                   const std::function<double(double)>& spectrum_h, double omega);

// Quadrature of the integrand above over the panels of `grid`. Requires a
// transparent model on the support.
double ensemble_density(const DispersionModel& m,
                        const std::function<double(double)>& spectrum_e,
                        const std::function<double(double)>& spectrum_h,
                        std::span<const double> grid);

// ------------------------------------------------- driven oscillator ledger

struct MonochromaticDrive {
  double e_amp = 0.0;  // field E_w cos(w t)
  double omega = 0.0;
};

struct LedgerSample {
  double t = 0.0;
  double kinetic = 0.0;          // N (1/2) m xdot^2
  double potential = 0.0;        // N (1/2) m w0^2 x^2
  double field = 0.0;            // (E^2 + H^2)/8pi
  double dissipated_rate = 0.0;  // 2 gamma * kinetic
  double drive_power = 0.0;      // N e E xdot
};

enum class LedgerStart {
  SteadyState,  // start on the driven periodic orbit (no transient)
  Rest          // x = xdot = 0; with gamma = 0 the free oscillation persists
};

struct LedgerSeries {
  std::vector<LedgerSample> rows;

  // Trapezoid average over [t_from, t_to]; spectrally accurate over whole periods.
  LedgerSample average(double t_from, double t_to) const;
};

// Integrates xdd + gamma xd + w0^2 x = (e/m) E_w cos(w t) and books energy
// densities per unit volume, with N supplied through omega_p. The integrator
// is velocity-Verlet with the damping applied exactly (exp(-gamma dt) between
// the half-kicks), so gamma costs no additional order of error.
LedgerSeries simulate_classical_oscillator_ledger(const OscillatorParams& params,
                                                  const MonochromaticDrive& drive, double t_end,
                                                  double dt,
                                                  LedgerStart start = LedgerStart::SteadyState);

// Cycle-averaged steady-state ledger of the damped driven oscillator, from the
// analytic particular solution (oracle for the simulator and for the
// stored-energy identities).
LedgerSample steady_state_cycle_average(const OscillatorParams& params,
                                        const MonochromaticDrive& drive);

// Diagnostic quadrature of the envelope-derivative heat term for
// quasi-monochromatic fields beyond the leading split:
//   (1/16pi) d(w eps_I)/dw |_{w0} * integral_{t_from}^{t} (-2) Im[E0'(s) E0*(s)] ds.
// The caller supplies the slowly varying envelope; its derivative is taken by
// Richardson central differences with step h.
double envelope_derivative_heat_term(const DispersionModel& m, double omega_0,
                                     const std::function<complexd(double)>& envelope,
                                     double t_from, double t, double h = 1e-4);

}  // namespace emden

#endif
