#include "cli.hpp"

int main(int argc, char** argv) { return matchforge::cli::run(argc, argv, std::cout, std::cerr); }
