#include "vacca/cli.hpp"

int main(int argc, char** argv) { return vacca::run_cli(argc, argv); }
