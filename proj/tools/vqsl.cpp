#include "vqsl/cli.hpp"

int main(int argc, char** argv) { return vqsl::cli_dispatch(argc, argv); }
