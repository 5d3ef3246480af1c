#include <iostream>

#include "powres/cli.hpp"

int main(int argc, char** argv) { return powres::cli_dispatch(argc, argv, std::cout, std::cerr); }
