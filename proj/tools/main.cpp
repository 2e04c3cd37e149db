#include <iostream>

#include "fullgroup/cli.hpp"

int main(int argc, char** argv) { return fullgroup::run_cli(argc, argv, std::cout, std::cerr); }
