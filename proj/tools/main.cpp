#include <iostream>

#include "gainthresh/cli.h"

int main(int argc, char** argv)
{
   return gainthresh::run_cli(argc, argv, std::cout, std::cerr);
}
