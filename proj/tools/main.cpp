#include <iostream>
#include <vector>

#include "shiftsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return shiftsim::cli::run(args, std::cout, std::cerr);
}
