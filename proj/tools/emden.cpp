#include <string>
#include <vector>

#include "emden/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return emden::run_cli(args);
}
