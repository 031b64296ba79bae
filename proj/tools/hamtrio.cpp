#include "hamtrio/cli/driver.hpp"

int main(int argc, char** argv) { return hamtrio::cli::run(argc, argv); }
