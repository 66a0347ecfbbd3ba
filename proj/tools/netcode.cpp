#include "netcode/cli.hpp"

int main(int argc, char** argv) { return netcode::cli::run(argc, argv); }
