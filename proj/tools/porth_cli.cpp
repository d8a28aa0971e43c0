#include "porth/cli.hpp"

int main(int argc, char** argv) { return porth::run_cli(argc, argv); }
