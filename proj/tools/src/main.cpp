#include "rlcli/cli.hpp"

int main(int argc, char** argv) { return rlcli::run_main(argc, argv); }
