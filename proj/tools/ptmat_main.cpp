#include <iostream>
#include <string>
#include <vector>

#include "ptmat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ptmat::cli::run(args, std::cout, std::cerr);
}
