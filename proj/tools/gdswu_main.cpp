#include <iostream>

#include "gdswu/cli/commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return gdswu::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
