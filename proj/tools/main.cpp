#include <iostream>

#include "nehari/cli.hpp"

int main(int argc, char** argv) { return nehari::run(argc, argv, std::cout, std::cerr); }
