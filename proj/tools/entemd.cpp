#include "cli_app.hpp"

int main(int argc, char** argv) { return entemd::cli::run(argc, argv); }
