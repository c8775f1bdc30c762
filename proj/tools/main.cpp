#include <iostream>

#include "qsemi/cli.hpp"

int main(int argc, char** argv) { return qsemi::run_cli(argc, argv, std::cout, std::cerr); }
