#include "lindblad/cli.hpp"

int main(int argc, char** argv) { return lindblad::run_cli(argc, argv); }
