#include <iostream>

#include "pgn/app.hpp"

int main(int argc, char** argv) { return pgn::main_entry(argc, argv, std::cout, std::cerr); }
