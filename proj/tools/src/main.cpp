#include <iostream>

#include "mlion/cli.hpp"

int main(int argc, char** argv) { return mlion::run_cli(argc, argv, std::cout, std::cerr); }
