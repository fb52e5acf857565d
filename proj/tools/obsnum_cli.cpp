#include <iostream>
#include <string>
#include <vector>

#include "obsnum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return obsnum::cli_dispatch(args, std::cout, std::cerr);
}
