#include <iostream>
#include <string>
#include <vector>

#include "dirac1d/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dirac1d::cli::run_command(args, std::cout, std::cerr);
}
