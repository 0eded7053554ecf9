#include <iostream>
#include <string>
#include <vector>

#include "crsgs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crsgs::cli_main(args, std::cout, std::cerr);
}
