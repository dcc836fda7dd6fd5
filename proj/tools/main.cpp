#include "rfso/cli/commands.hpp"

int main(int argc, char** argv) { return rfso::cli::run_cli(argc, argv); }
