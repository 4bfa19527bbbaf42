#include "nhlab/cli.hpp"

int main(int argc, char** argv) { return nhlab::cli::run(argc, argv); }
