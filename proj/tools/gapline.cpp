#include <string>
#include <vector>

#include "gapline/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gapline::cli::run(args).exit_code;
}
