#include <iostream>
#include <string>
#include <vector>

#include "gthom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gthom::run_cli(std::move(args), std::cin, std::cout, std::cerr);
}
