#include <string>
#include <vector>

#include "c1homeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return c1homeo::run_cli(args);
}
