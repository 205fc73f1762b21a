#include <iostream>

#include "bihw/cli.hpp"

int main(int argc, char** argv)
{
    return bihw::cli::run(argc, argv, std::cout, std::cerr);
}
