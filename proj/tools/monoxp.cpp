#include "monoxp/cli/commands.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return monoxp::cli::run_cli(argc, argv, std::cout, std::cerr);
}
