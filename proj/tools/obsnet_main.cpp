#include "obsnet/cli.hpp"

int main(int argc, char** argv) { return obsnet::run_cli(argc, argv); }
