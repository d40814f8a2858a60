#include "qcbound/cli.hpp"

int main(int argc, char** argv) { return qcb::run_cli(argc, argv); }
