#include "uavplan/cli.hpp"

int main(int argc, char** argv) { return uavplan::run_cli(argc, argv); }
