#include "hierflow/cli.h"

int main(int argc, char** argv) { return hierflow::RunCli(argc, argv); }
