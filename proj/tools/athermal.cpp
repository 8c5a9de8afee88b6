#include "athermal/cli.hpp"

int main(int argc, char** argv) { return athermal::cli::run(argc, argv); }
