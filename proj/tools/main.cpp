#include <iostream>
#include <string>
#include <vector>

#include "entrolab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return entrolab::run_cli(args, std::cout, std::cerr);
}
