#include <iostream>

#include "pcurv/cli.hpp"

int main(int argc, char** argv) { return pcurv::run_cli(argc, argv, std::cout, std::cerr); }
