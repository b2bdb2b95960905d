#include <iostream>
#include <string>
#include <vector>

#include "bohrlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bohrlab::dispatch(args, std::cout, std::cerr);
}
