#include <iostream>

#include "pagen_cli.hpp"

int main(int argc, char** argv) { return pagen::cli::run(argc, argv, std::cout, std::cerr); }
