#include "swarmill/cli.hpp"

int main(int argc, char** argv) { return swarmill::cli_main(argc, argv); }
