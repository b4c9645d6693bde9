#include "distinguish/cli.hpp"

int main(int argc, char** argv) { return distinguish::cli::main(argc, argv); }
