#include <iostream>

#include "pesgame/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pesgame::run_cli(args, std::cin, std::cout, std::cerr);
}
