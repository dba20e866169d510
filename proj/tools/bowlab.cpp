#include <iostream>

#include "bowlab/cli/cli.hpp"

int main(int argc, char** argv) {
  return bowlab::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
