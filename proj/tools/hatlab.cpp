#include "hatlab/cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
    return hatlab::cli::run(argc, argv, std::cout, std::cerr);
}
