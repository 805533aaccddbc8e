#ifndef EMDEN_SED_SIM_HPP
#define EMDEN_SED_SIM_HPP

#include <cstdint>
#include <vector>

#include "emden/dispersion.hpp"
#include "emden/oscillator.hpp"

namespace emden {

// One-sided Langevin force spectrum per Cartesian component,
// S_F(w) = (m gamma / pi) w coth(w / 2T); zero at and beyond the UV cutoff.
double langevin_force_spectrum(const OscillatorParams& params, double temperature, double omega);

// Colored noise track of n_fft samples at spacing dt, synthesized in the
// frequency domain with Hermitian Gaussian coefficients scaled by
// sqrt(S_F(w_k) dw); deterministic in (params, T, dt, seed).
std::vector<double> synthesize_langevin_force(const OscillatorParams& params, double temperature,
                                              double dt, std::size_t n_fft, std::uint64_t seed);

struct SimulationConfig {
  double dt = 0.0;
  std::size_t n_steps = 0;  // per trajectory, burn-in included
  std::size_t n_traj = 0;
  std::uint64_t seed = 1;
  double burn_in_time = -1.0;  // < 0: default 10/gamma
  std::vector<std::size_t> snapshot_steps;
  int n_threads = 0;  // 0 = hardware concurrency
};

struct TrajectoryStats {
  double kinetic = 0.0;      // time-averaged (1/2) m v^2
  double potential = 0.0;    // time-averaged (1/2) m w0^2 x^2
  double noise_power = 0.0;  // time-averaged F v
  double diss_power = 0.0;   // time-averaged gamma m v^2
  std::vector<double> snapshots;
  double energy() const { return kinetic + potential; }
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct TrajectoryEnsemble {
  std::size_t n_traj = 0;
  std::size_t n_measured = 0;  // measured steps per trajectory
  std::vector<TrajectoryStats> traj;

  // Batch-means aggregates: each trajectory is one independent batch.
  Estimate energy() const;       // per Cartesian component
  Estimate kinetic() const;
  Estimate potential() const;
  Estimate noise_power() const;
  Estimate diss_power() const;
  Estimate power_imbalance() const;  // noise_power - diss_power

  Estimate energy_3d() const;  // three independent components
};

// Quantum-Langevin oscillator ensemble: spectral-synthesis noise, one
// BAOAB-split integration per trajectory (damping applied exactly), burn-in
// discarded, per-trajectory seeds split from the root seed.
TrajectoryEnsemble simulate_oscillator(const OscillatorParams& params, double temperature,
                                       const SimulationConfig& cfg);

// Three-component thermal-equilibrium oscillator energy,
// (3 gamma / pi) int_0^wc dw w (w0^2 + w^2) [N(w) + 1/2] / [(w0^2-w^2)^2 + g^2 w^2].
double oscillator_energy_analytic(const OscillatorParams& params, double temperature,
                                  double rel_tol = 1e-10);

// Closed form of the zero-point part, (3/pi) w1 acos(g/2w0) + (3g/2pi) ln(wc/w0);
// asymptotic in wc (relative remainder O((w0/wc)^2 / gamma-weighted)).
double oscillator_zero_point_closed(const OscillatorParams& params);

// Both sides of the position-momentum commutator envelope.
double commutator_envelope(const OscillatorParams& params, double tau);
double commutator_envelope_quadrature(const OscillatorParams& params, double tau,
                                      double abs_tol = 1e-8);

// ------------------------------------------------- noise-polarization field

struct RadialKGrid {
  double k_min = 0.0;
  double k_max = 0.0;
  std::size_t n = 0;

  double dk() const { return (k_max - k_min) / static_cast<double>(n); }
  double center(std::size_t i) const { return k_min + (static_cast<double>(i) + 0.5) * dk(); }
  double cell_volume(std::size_t i) const;  // 4 pi k^2 dk
};

struct FrequencyGrid {
  double w_min = 0.0;
  double w_max = 0.0;
  std::size_t n = 0;

  double dw() const { return (w_max - w_min) / static_cast<double>(n); }
  double center(std::size_t i) const { return w_min + (static_cast<double>(i) + 0.5) * dw(); }
};

// Ensemble of noise-polarization realizations on a (k, lambda, w) grid. The
// isotropic transfer function lets a radial shell stand for its whole k-cell;
// amplitudes are complex circular Gaussians with the Rytov variance
// (hbar/2 pi^3) eps_I(w) [N(w)+1/2] / (dw * dV_k), independent cell to cell,
// addressed by a counter RNG so access is random-order and thread safe.
class NoisePolarizationEnsemble {
 public:
  NoisePolarizationEnsemble(const DispersionModel& m, const RadialKGrid& kgrid,
                            const FrequencyGrid& wgrid, double temperature, std::size_t n_real,
                            std::uint64_t seed);

  complexd amplitude(std::size_t realization, std::size_t ik, int lambda, std::size_t iw) const;
  double cell_variance(std::size_t ik, std::size_t iw) const;  // target <|g|^2>

  const DispersionModel& model() const { return model_; }
  const RadialKGrid& kgrid() const { return kgrid_; }
  const FrequencyGrid& wgrid() const { return wgrid_; }
  double temperature() const { return temperature_; }
  std::size_t n_real() const { return n_real_; }

 private:
  DispersionModel model_;
  RadialKGrid kgrid_;
  FrequencyGrid wgrid_;
  double temperature_ = 0.0;
  std::size_t n_real_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> cell_sigma_;  // per (iw, ik)
};

NoisePolarizationEnsemble sample_noise_polarization(const DispersionModel& m,
                                                    const RadialKGrid& kgrid,
                                                    const FrequencyGrid& wgrid,
                                                    double temperature, std::size_t n_real,
                                                    std::uint64_t seed);

struct FieldSpectrumEstimate {
  std::vector<double> omega;
  std::vector<double> value;      // estimated d<E^2>/dw
  std::vector<double> std_error;
  bool resolution_warning = false;  // k cells too coarse for the resonant shell
  double shell_cells = 0.0;         // cells across the Lorentzian shell width
  double tail_fraction = 0.0;       // estimated weight beyond k_max
};

// Pushes each realization through the scalar transfer (w^2/c^2)/(k^2 - eps w^2/c^2)
// and accumulates the field spectrum; converges to e_field_spectrum as grids refine.
FieldSpectrumEstimate reconstruct_field_spectrum(const NoisePolarizationEnsemble& ens,
                                                 int n_threads = 0);

}  // namespace emden

#endif
