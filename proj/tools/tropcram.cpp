#include <iostream>

#include "tropcram/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tropcram::cli::run(args, std::cout, std::cerr);
}
