#include <iostream>

#include "ompr/io.hpp"

int main(int argc, char** argv) { return ompr::cli_main(argc, argv, std::cout, std::cerr); }
