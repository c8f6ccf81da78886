#include <iostream>
#include <string>
#include <vector>

#include "flashmod/cli.hpp"

int main(int argc, char** argv) {
  return flashmod::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
