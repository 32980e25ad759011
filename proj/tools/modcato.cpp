#include <iostream>

#include "modcato_cli.hpp"

int main(int argc, char** argv) { return modcato::cli::run(argc, argv, std::cout, std::cerr); }
