#include "cli.hpp"

int main(int argc, char** argv) { return efc::cli::run(argc, argv, std::cout, std::cerr); }
