#include "cli.hpp"

int main(int argc, char** argv) { return orq::cli::run(argc, argv); }
