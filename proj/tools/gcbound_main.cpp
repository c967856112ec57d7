#include "gcbound/cli.hpp"

int main(int argc, char** argv) { return gcbound::run_cli(argc, argv); }
