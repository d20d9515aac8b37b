#include <iostream>
#include <string>
#include <vector>

#include "greedy_riesz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return greedy_riesz::cli::run(args, std::cout, std::cerr);
}
