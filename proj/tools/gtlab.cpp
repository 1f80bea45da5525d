#include <exception>
#include <iostream>

#include "gtlab/cli/commands.hpp"
#include "gtlab/cli/config.hpp"

int main(int argc, char** argv) {
  gtlab::cli::ExperimentConfig config;
  int code = 0;
  if (!gtlab::cli::parse_command_line(argc, argv, config, code)) return code;
  try {
    return gtlab::cli::run(std::move(config));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
