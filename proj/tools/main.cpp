#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return hofloq::cli::run(argc, argv, std::cerr); }
