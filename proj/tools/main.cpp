#include <iostream>
#include <string>
#include <vector>

#include "blaschke/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return blaschke::run_cli(args, std::cout, std::cerr);
}
