#ifndef EMDEN_ERRORS_HPP
#define EMDEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace emden {

// Bad inputs: malformed models, out-of-range parameters, violated preconditions.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine could not reach its requested tolerance.
class tolerance_error : public std::runtime_error {
 public:
  explicit tolerance_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace emden

#endif
