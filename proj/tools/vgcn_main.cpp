#include "vgcn/cli.hpp"

int main(int argc, char** argv) { return vgcn::cli::run(argc, argv); }
