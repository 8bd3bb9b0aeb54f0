#include <vector>

#include "rhmc/cli.hpp"

int main(int argc, char** argv) {
  return rhmc::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
