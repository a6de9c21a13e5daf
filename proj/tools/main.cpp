#include "cli.hpp"

int main(int argc, char** argv) { return supcal::cli::run(argc, argv); }
