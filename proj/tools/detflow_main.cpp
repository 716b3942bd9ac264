#include <iostream>

#include "detflow/cli/commands.hpp"

int main(int argc, char** argv) { return detflow::run_cli(argc, argv, std::cout, std::cerr); }
