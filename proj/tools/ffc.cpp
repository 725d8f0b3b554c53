#include "ffcurve/cli.hpp"

int main(int argc, char** argv) { return ffcurve::cli::run(argc, argv); }
