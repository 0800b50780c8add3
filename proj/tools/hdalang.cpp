#include "hdalang/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hdalang::cli::run(args);
}
