#include <iostream>

#include "morphoagg/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return morphoagg::run_cli(args, std::cout, std::cerr);
}
