#include <iostream>

#include "pbitsa/cli.hpp"

int main(int argc, char** argv) {
  return pbitsa::cli::run(argc, argv, std::cout, std::cerr);
}
