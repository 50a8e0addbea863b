#include <iostream>

#include "photogest/cli.hpp"

int main(int argc, char** argv) {
  return photogest::cli::run(argc, argv, std::cout, std::cerr);
}
