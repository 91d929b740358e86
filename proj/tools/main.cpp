#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return gexlab::cli::runCli(argc, argv, std::cout, std::cerr);
}
