#ifndef EMDEN_OSCILLATOR_HPP
#define EMDEN_OSCILLATOR_HPP

#include <cmath>

#include "emden/errors.hpp"

namespace emden {

// Material oscillator: mass m, resonance omega_0, damping gamma, and the
// medium coupling through the plasma frequency omega_p = (4 pi N e^2/m)^(1/2).
// omega_c is the hard UV cutoff of the reservoir coupling.
struct OscillatorParams {
  double m = 1.0;
  double omega_p = 0.0;
  double omega_0 = 1.0;
  double gamma = 0.0;
  double omega_c = 0.0;

  double omega_1() const {  // shifted frequency of the damped oscillator
    return std::sqrt(omega_0 * omega_0 - 0.25 * gamma * gamma);
  }

  void validate_underdamped() const {
    if (!(m > 0.0)) throw validation_error("oscillator: mass must be positive");
    if (!(omega_0 > 0.0)) throw validation_error("oscillator: omega_0 must be positive");
    if (!(gamma >= 0.0)) throw validation_error("oscillator: gamma must be non-negative");
    if (!(gamma < 2.0 * omega_0))
      throw validation_error("oscillator: overdamped (gamma >= 2 omega_0)");
  }

  void validate_cutoff() const {
    if (!(omega_c > 10.0 * omega_0))
      throw validation_error("oscillator: UV cutoff must exceed 10 omega_0");
  }
};

}  // namespace emden

#endif
