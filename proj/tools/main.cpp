#include "poslab/cli.hpp"

int main(int argc, char** argv) { return poslab::cli::main_entry(argc, argv); }
