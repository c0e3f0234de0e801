#include "prodperc/cli.hpp"

int main(int argc, char** argv) { return prodperc::run_cli(argc, argv); }
