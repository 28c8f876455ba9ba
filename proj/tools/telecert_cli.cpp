#include "telecert/frontend/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return telecert::cli_main(argc, argv, std::cout, std::cerr);
}
