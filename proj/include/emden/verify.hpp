#ifndef EMDEN_VERIFY_HPP
#define EMDEN_VERIFY_HPP

#include <span>
#include <string>
#include <vector>

#include "emden/dispersion.hpp"

namespace emden {

struct CheckRecord {
  std::string check_name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// The fast invariant suite behind `verify`: identity and quadrature checks
// over the configured band. Monte-Carlo criteria live in the acceptance suite.
std::vector<CheckRecord> run_verification(const DispersionModel& m, std::span<const double> grid,
                                          double regularization_a);

bool all_pass(const std::vector<CheckRecord>& checks);

}  // namespace emden

#endif
