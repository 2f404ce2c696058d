#include "partsrl/cli.hpp"

int main(int argc, char** argv) { return partsrl::cli::Main(argc, argv); }
