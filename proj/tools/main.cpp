#include <string>
#include <vector>

#include "qcqp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qcqp::cli::run(args);
}
