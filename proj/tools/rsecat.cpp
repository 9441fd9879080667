#include <iostream>

#include "rsecat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rsecat::run_cli(args, std::cout, std::cerr);
}
