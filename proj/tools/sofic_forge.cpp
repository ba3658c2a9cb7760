#include <iostream>

#include "sofic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sofic::cli::run(args, std::cout, std::cerr);
}
