#include "cli/scenario.hpp"

int main(int argc, char** argv) {
  return jclab::cli::run_cli(argc, argv);
}
