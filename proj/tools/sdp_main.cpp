#include <iostream>

#include "sdp/cli.hpp"

int main(int argc, char** argv) {
  return sdp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
