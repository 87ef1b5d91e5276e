#include "nlheat/cli/runner.hpp"

int main(int argc, char** argv) { return nlheat::cli::main(argc, argv); }
