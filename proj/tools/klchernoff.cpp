#include <iostream>

#include "klchernoff/cli.hpp"

int main(int argc, char** argv) {
  return klchernoff::run_cli(argc, argv, std::cout, std::cerr);
}
