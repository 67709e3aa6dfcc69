#include <iostream>

#include "viscycle/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return viscycle::cli::run(args, std::cout, std::cerr);
}
