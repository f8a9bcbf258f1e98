#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const char* env = std::getenv("BK_COLOR");
  bool color = isatty(STDOUT_FILENO) && !(env && std::strcmp(env, "0") == 0);
  return bk::cli::run(args, std::cout, std::cerr, color);
}
