#include "csmp/cli.hpp"

int main(int argc, char** argv) { return csmp::cli::main(argc, argv); }
