#include "depcross/cli.hpp"

int main(int argc, char** argv) { return depcross::cli::run(argc, argv); }
