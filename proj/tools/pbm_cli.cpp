#include <iostream>
#include <string>
#include <vector>

#include "pbm/cli_main.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pbm::runCli(args, std::cout, std::cerr);
}
