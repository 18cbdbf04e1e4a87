#include <iostream>
#include <string>
#include <vector>

#include "pathalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pathalg::cli::run(args, std::cout, std::cerr);
}
