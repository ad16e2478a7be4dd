#include <iostream>
#include <string>
#include <vector>

#include <polyaut/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polyaut::run_cli(std::move(args), std::cout, std::cerr);
}
