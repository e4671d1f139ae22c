#include "frobroot/cli/cli.hpp"

int main(int argc, char** argv) { return frobroot::cli::main(argc, argv); }
