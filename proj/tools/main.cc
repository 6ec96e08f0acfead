#include <iostream>
#include <string>
#include <vector>

#include "mcf/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mcf::dispatch(args, std::cout, std::cerr);
}
