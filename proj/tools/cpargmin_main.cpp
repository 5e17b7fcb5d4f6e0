#include <iostream>

#include "cpargmin/cli.hpp"

int main(int argc, char** argv) { return cpargmin::run_cli(argc, argv, std::cout, std::cerr); }
