#include "steiner/cli.hpp"

int main(int argc, char** argv) { return steiner::cli_main(argc, argv); }
