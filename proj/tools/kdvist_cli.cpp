#include <kdvist/cli.hpp>

int main(int argc, char** argv) { return kdvist::run_cli(argc, argv); }
