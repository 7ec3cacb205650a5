#include "mch/cli.hpp"

int main(int argc, char** argv) { return mch::cli::dispatch(argc, argv); }
