#pragma once

namespace hierflow {

// Command-line entry point: solve / approx / hierarchy / verify on DIMACS
// max-flow instances. Returns 0 on success, 1 when a solve fails its own
// verification or a supplied flow is rejected, 2 on input errors.
int RunCli(int argc, const char* const* argv);

}  // namespace hierflow
