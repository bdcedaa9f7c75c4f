#include "conelw/cli.hpp"

int main(int argc, char** argv) { return conelw::cli::run(argc, argv); }
