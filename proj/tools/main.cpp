#include <iostream>

#include "planarquad/cli.hpp"

int main(int argc, char** argv)
{
    return planarquad::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
