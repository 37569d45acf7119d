#include <iostream>
#include <string>
#include <vector>

#include "lbfd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lbfd::run_cli(args, std::cout, std::cerr);
}
