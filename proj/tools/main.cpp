#include <iostream>

#include "rearr/cli.hpp"

int main(int argc, char** argv) {
  return rearr::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
