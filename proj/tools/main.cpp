#include "aloha/cli.hpp"

int main(int argc, char** argv) { return aloha::cli::run(argc, argv); }
