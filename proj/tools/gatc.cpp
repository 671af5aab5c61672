#include <iostream>

#include "gatc/cli.hpp"

int main(int argc, char** argv) { return gatc::cli::run(argc, argv, std::cout, std::cerr); }
