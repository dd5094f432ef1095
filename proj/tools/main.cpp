// main.cpp: entry point of the dressed command-line tool

#include <iostream>

#include "dressed/cli.hpp"

int main(int argc, char** argv) {
    return dressed::cli::run(argc, argv, std::cout, std::cerr);
}
