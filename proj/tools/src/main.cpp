#include <iostream>
#include <string>
#include <vector>

#include "ptsep_cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return ptsep::cli::run_cli(args, std::cout, std::cerr);
}
