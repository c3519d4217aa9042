#include "spinclock/cli.hpp"

int main(int argc, char** argv) { return spinclock::run_cli(argc, argv); }
