#include <iostream>

#include "karcher_cone/cli.hpp"

int main(int argc, char** argv) {
  return karcher_cone::cli::run(argc, argv, std::cout, std::cerr);
}
