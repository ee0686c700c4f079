#include <iostream>

#include "quantlab/cli.hpp"

int main(int argc, char** argv) { return quantlab::cli::main_entry(argc, argv, std::cout, std::cerr); }
