#include <iostream>
#include <string>
#include <vector>

#include "gpf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gpf::cli::run(args, std::cout, std::cerr);
}
