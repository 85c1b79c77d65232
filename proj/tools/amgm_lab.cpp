#include <iostream>
#include <string>
#include <vector>

#include "amgm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return amgm::run_cli(args, std::cout, std::cerr);
}
