#include <iostream>

#include "wdp/cli.hpp"

int main(int argc, char** argv) { return wdp::run(argc, argv, std::cout, std::cerr); }
