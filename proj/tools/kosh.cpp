// Command-line entry point; see `kosh --help`.
#include "kosh/driver.hpp"

int main(int argc, char** argv) { return kosh::cli_main(argc, argv); }
