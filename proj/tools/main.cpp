#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  return bsml::cli::cli_main(argc, argv, std::cin, std::cout, std::cerr);
}
