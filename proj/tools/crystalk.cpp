#include "crystalk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return crystalk::run_cli(argc, argv, std::cout, std::cerr); }
