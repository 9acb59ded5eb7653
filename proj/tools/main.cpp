#include <iostream>
#include <string>
#include <vector>

#include "welfarelens/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return welfarelens::cli::run(args, std::cout, std::cerr);
}
