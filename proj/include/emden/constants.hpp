#ifndef EMDEN_CONSTANTS_HPP
#define EMDEN_CONSTANTS_HPP

namespace emden {

// Natural units: hbar = c = k_B = 1. Every quantity is a power of one
// frequency scale; conversion to SI happens (if at all) at the CLI boundary.
// The symbols are kept so formulas read like the physics they implement.
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double hbar = 1.0;
inline constexpr double c_light = 1.0;
inline constexpr double k_boltzmann = 1.0;

}  // namespace emden

#endif
