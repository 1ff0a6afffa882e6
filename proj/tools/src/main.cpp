#include "deepwave_cli/commands.hpp"

int main(int argc, char** argv) { return deepwave::cli::run(argc, argv); }
