#include <iostream>

#include "hybridsail/cli.h"

int main(int argc, char** argv) {
  return hybridsail::RunCli(argc, argv, std::cout, std::cerr);
}
