#include "paf/cli.hpp"

int main(int argc, char** argv) { return paf::cli::run(argc, argv); }
