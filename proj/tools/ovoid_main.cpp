#include "ovoid/cli.hpp"

int main(int argc, char** argv) { return ovoid::cli::main(argc, argv); }
