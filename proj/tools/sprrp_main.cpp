#include <iostream>
#include <string>
#include <vector>

#include "sprrp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sprrp::run(args, std::cout, std::cerr);
}
