#include <unistd.h>

#include <iostream>

#include "ccl/dsl/cli.hpp"

int main(int argc, char** argv) {
  return ccl::dsl::run_main(argc, argv, std::cin, std::cout, std::cerr, isatty(0) != 0);
}
