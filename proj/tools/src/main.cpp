#include <unistd.h>

#include <iostream>

#include "spbw/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spbw::cli::run_cli(args, std::cout, std::cerr, isatty(STDERR_FILENO) != 0);
}
