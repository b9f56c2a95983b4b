#include <iostream>
#include <string>
#include <vector>

#include "smallscat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smallscat::cli::dispatch(args, std::cout, std::cerr);
}
