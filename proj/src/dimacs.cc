#include "hierflow/dimacs.h"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hierflow {

namespace {

constexpr CapacityT kCapacityLimit = 1LL << 62;

[[noreturn]] void Fail(int line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

DimacsInstance ParseDimacs(std::istream& in) {
  DimacsInstance inst;
  bool have_problem = false;
  long long declared_arcs = 0, seen_arcs = 0;
  int n = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;  // blank line
    if (kind == "c") continue;
    if (kind == "p") {
      if (have_problem) Fail(line_no, "duplicate problem line");
      std::string fmt;
      long long nn, mm;
      if (!(ss >> fmt >> nn >> mm)) Fail(line_no, "malformed problem line");
      if (fmt != "max") Fail(line_no, "problem type must be 'max'");
      if (nn <= 0) Fail(line_no, "vertex count must be positive");
      if (mm < 0) Fail(line_no, "negative arc count");
      n = static_cast<int>(nn);
      declared_arcs = mm;
      inst.g = Graph(n);
      have_problem = true;
    } else if (kind == "n") {
      if (!have_problem) Fail(line_no, "node line before problem line");
      long long id;
      std::string role;
      if (!(ss >> id >> role)) Fail(line_no, "malformed node line");
      if (id < 1 || id > n) Fail(line_no, "vertex id out of range");
      if (role == "s") {
        if (inst.source != -1) Fail(line_no, "duplicate source");
        inst.source = static_cast<Vertex>(id - 1);
      } else if (role == "t") {
        if (inst.sink != -1) Fail(line_no, "duplicate sink");
        inst.sink = static_cast<Vertex>(id - 1);
      } else {
        Fail(line_no, "node role must be 's' or 't'");
      }
    } else if (kind == "a") {
      if (!have_problem) Fail(line_no, "arc line before problem line");
      long long u, v, c;
      if (!(ss >> u >> v >> c)) Fail(line_no, "malformed arc line");
      if (u < 1 || u > n || v < 1 || v > n)
        Fail(line_no, "vertex id out of range");
      if (c < 0) Fail(line_no, "negative capacity");
      if (c >= kCapacityLimit) Fail(line_no, "capacity overflow beyond 2^62");
      ++seen_arcs;
      if (c > 0)
        inst.g.AddEdge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1),
                       c);
    } else {
      Fail(line_no, "unknown line type '" + kind + "'");
    }
    std::string extra;
    if (ss >> extra) Fail(line_no, "extra tokens after line");
  }
  if (!have_problem) throw ParseError("missing problem line");
  if (seen_arcs != declared_arcs)
    throw ParseError("arc count mismatch: declared " +
                     std::to_string(declared_arcs) + ", found " +
                     std::to_string(seen_arcs));
  if (inst.source == -1) throw ParseError("missing source");
  if (inst.sink == -1) throw ParseError("missing sink");
  return inst;
}

void WriteDimacs(const DimacsInstance& inst, std::ostream& out) {
  out << "p max " << inst.g.n << " " << inst.g.m << "\n";
  out << "n " << inst.source + 1 << " s\n";
  out << "n " << inst.sink + 1 << " t\n";
  for (Edge e : inst.g.Edges())
    out << "a " << inst.g.tail[e] + 1 << " " << inst.g.head[e] + 1 << " "
        << inst.g.capacity[e] << "\n";
}

}  // namespace hierflow
