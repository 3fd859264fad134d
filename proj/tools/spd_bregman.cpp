#include <iostream>

#include "spd_bregman/cli.hpp"

int main(int argc, char** argv) { return spdb::cli::run_cli(argc, argv, std::cout, std::cerr); }
