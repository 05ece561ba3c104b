#include <iostream>
#include <string>
#include <vector>

#include "irbox/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return irbox::cli::run(args, std::cout, std::cerr);
}
