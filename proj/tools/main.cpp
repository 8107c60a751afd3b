#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return isogauss::run_cli(argc, argv, std::cout, std::cerr);
}
