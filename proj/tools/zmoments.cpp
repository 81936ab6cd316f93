#include "zm/cli.hpp"

int main(int argc, char** argv) { return zm::dispatch(argc, argv); }
