#include <iostream>
#include <string>
#include <vector>

#include "symptrace/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return symptrace::cli::dispatch(args, std::cout, std::cerr);
}
