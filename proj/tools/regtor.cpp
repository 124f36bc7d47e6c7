#include "regtor/cli/app.hpp"

int main(int argc, char** argv) { return regtor::cli::run_cli(argc, argv); }
