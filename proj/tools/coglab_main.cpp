#include "commands.hpp"

int main(int argc, char** argv) { return coglab::cli::run(argc, argv); }
