#include <iostream>

#include "ccpp_tools/cli.hpp"

int main(int argc, char** argv) { return ccpp_tools::run(argc, argv, std::cout, std::cerr); }
