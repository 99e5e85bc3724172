#include <iostream>

#include "dillon/cli.hpp"

int main(int argc, char** argv) {
  return dillon::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
