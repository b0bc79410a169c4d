#include "qbox/cli.hpp"

int main(int argc, char** argv) { return qbox::cli::run(argc, argv); }
