#include <iostream>

#include "cli.hh"

int main(int argc, char** argv) {
    return hdatool::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
