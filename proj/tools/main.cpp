#include "tsarm/cli.hpp"

int main(int argc, char** argv) { return tsarm::run_cli(argc, argv); }
