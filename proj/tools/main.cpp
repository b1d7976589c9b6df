#include <iostream>

#include "schmidt/cli.hpp"

int main(int argc, char** argv) { return schmidt::cli::run(argc, argv, std::cout, std::cerr); }
