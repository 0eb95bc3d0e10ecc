#include <string>
#include <vector>

#include "suspflow/commands.hpp"

int main(int argc, char** argv) {
  return suspflow::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
