#include "sumbound/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sumbound::cli::run(argc, argv, std::cout, std::cerr);
}
