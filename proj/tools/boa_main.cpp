#include "boa/cli.hpp"

int main(int argc, char** argv) { return boa::cli_main(argc, argv); }
