#include "lifespan/cli.hpp"

int main(int argc, char** argv) { return lifespan::run_cli(argc, argv); }
