#include "mledca/cli.hpp"

int main(int argc, char** argv) { return mledca::cli::run(argc, argv); }
