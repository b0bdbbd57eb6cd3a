#include "kepoly/report.hpp"

int main(int argc, char** argv) { return kepoly::cli::run(argc, argv); }
