#include <iostream>

#include "tetris/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tetris::run_cli(args, std::cout, std::cerr);
}
