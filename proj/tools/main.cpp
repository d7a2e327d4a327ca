#include <iostream>
#include <string>
#include <vector>

#include "blanchfield/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blanchfield::cli::run(args, std::cout, std::cerr);
}
