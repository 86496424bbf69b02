#include <iostream>

#include "starlab/cli.hpp"

int main(int argc, char** argv) {
  return starlab::run_cli(argc, argv, std::cout, std::cerr);
}
