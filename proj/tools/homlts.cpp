#include <iostream>

#include "homlts/cli.hpp"

int main(int argc, char** argv) {
  return homlts::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
