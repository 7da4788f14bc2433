#include "qca/cli.hpp"

int main(int argc, char** argv) { return qca::cli::run(argc, argv); }
