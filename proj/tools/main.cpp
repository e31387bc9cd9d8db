#include "depcor/cli/app.hpp"

int main(int argc, char** argv) { return depcor::cli::main(argc, argv); }
