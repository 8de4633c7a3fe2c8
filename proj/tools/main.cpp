#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    designlens::cli::Environment env;
    env.stdout_is_terminal = ::isatty(STDOUT_FILENO) != 0;
    env.no_color = std::getenv("DESIGNLENS_NO_COLOR") != nullptr;
    return designlens::cli::run(args, std::cin, std::cout, std::cerr, env);
}
