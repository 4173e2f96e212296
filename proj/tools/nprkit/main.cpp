#include "cli.hpp"

int main(int argc, char** argv) { return nprcli::run(argc, argv); }
