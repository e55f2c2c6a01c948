#include <iostream>

#include "expfun/cli.hpp"

int main(int argc, char** argv) {
  return expfun::cli::run_cli(argc, argv, std::cout, std::cerr);
}
