#ifndef EMDEN_CLI_HPP
#define EMDEN_CLI_HPP

#include <string>
#include <vector>

namespace emden {

// Full command-line front end as a callable so tests can drive it in-process.
// Exit codes: 0 success, 1 validation/usage error, 2 numerical-tolerance
// failure in `verify`.
int run_cli(const std::vector<std::string>& args);

}  // namespace emden

#endif
