#include <iostream>

#include "ramanbeat/cli/runner.hpp"

int main(int argc, char** argv) { return ramanbeat::cli::run_cli(argc, argv, std::cout, std::cerr); }
