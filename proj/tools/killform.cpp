#include <unistd.h>

#include <iostream>

#include "killform/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return killform::cli::run(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
