#include <string>
#include <vector>

#include "cf/cli/cli.hpp"

int main(int argc, char** argv) {
  return cf::cli::run_cli(std::vector<std::string>(argv, argv + argc));
}
