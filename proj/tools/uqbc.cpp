#include <iostream>

#include "uqbc/cli.hpp"

int main(int argc, char** argv) { return uqbc::run_cli(argc, argv, std::cout, std::cerr); }
