#include <string>
#include <vector>

#include "algaut/cli.hpp"

int main(int argc, char** argv) {
  return algaut::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
