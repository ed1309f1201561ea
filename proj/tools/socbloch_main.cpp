#include <iostream>

#include "socbloch/app.hpp"

int main(int argc, char** argv) { return socbloch::app::run_cli(argc, argv, std::cout, std::cerr); }
