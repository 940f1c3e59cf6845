#include "cli.hpp"

int main(int argc, char** argv) { return fzdr::cli::run(argc, argv); }
