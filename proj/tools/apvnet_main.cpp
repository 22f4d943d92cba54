#include "apvnet/cli.hpp"

int main(int argc, char** argv) { return apvnet::cli_main(argc, argv); }
