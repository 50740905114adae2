#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return qtseq::cli::run(argc, argv, std::cout, std::cerr); }
