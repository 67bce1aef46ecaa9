#include <iostream>
#include <string>
#include <vector>

#include "ergrates/cli.hpp"

int main(int argc, char** argv) {
  return ergrates::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
