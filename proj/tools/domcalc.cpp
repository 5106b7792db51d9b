#include <iostream>

#include "domcalc/cli.hpp"

int main(int argc, char** argv) { return domcalc::run_cli(argc, argv, std::cout, std::cerr); }
