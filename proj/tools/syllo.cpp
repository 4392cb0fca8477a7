#include <iostream>

#include "syllo/cli.hpp"

int main(int argc, char** argv) { return syllo::run(argc, argv, std::cout, std::cerr); }
