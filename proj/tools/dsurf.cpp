#include <iostream>

#include "dsurf/cli.hpp"

int main(int argc, char** argv) { return dsurf::cli::run(argc, argv, std::cout, std::cerr); }
