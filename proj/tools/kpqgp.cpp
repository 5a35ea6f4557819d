#include "kpqgp/cli.hpp"

int main(int argc, char** argv) { return kpqgp::cli::run(argc, argv); }
