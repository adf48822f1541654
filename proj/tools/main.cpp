#include <iostream>
#include <string>
#include <vector>

#include "hbfde/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return hbfde::cli::run(args, std::cout, std::cerr);
}
