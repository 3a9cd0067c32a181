#include "perceprice/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    const std::vector<std::string> args(argv + 1, argv + argc);
    return perceprice::cli::run(args, std::cout, std::cerr, perceprice::cli::environment_from_process());
}
