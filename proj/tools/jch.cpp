#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return jch::cli::run(argc, argv, std::cout, std::cerr); }
