#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hierflow/graph.h"

namespace hierflow {

// Thrown for any malformed DIMACS max-flow input. The message names the
// offending line and constraint.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DimacsInstance {
  Graph g;
  Vertex source = -1;
  Vertex sink = -1;
};

// Reads DIMACS max-flow format:
//   c <comment>
//   p max <n> <m>
//   n <id> s   /  n <id> t
//   a <tail> <head> <capacity>
// Ids are 1-based on input and converted to 0-based. Zero-capacity arcs are
// dropped (they can never carry flow), but still count toward the declared
// arc total.
DimacsInstance ParseDimacs(std::istream& in);

// Inverse of ParseDimacs up to dropped zero-capacity arcs and comments.
void WriteDimacs(const DimacsInstance& inst, std::ostream& out);

}  // namespace hierflow
