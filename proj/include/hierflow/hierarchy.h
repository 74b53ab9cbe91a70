#pragma once

#include "hierflow/graph.h"

namespace hierflow {

/**
 * Edge-level hierarchy. Every edge carries a level in [1, levels]; the
 * level-i components are the strongly connected components of the graph
 * restricted to edges of level at most i. Level 0 is the singleton
 * partition and the top level groups the strongly connected components of
 * the whole graph. Component ids within one level follow a topological
 * order of the condensation, which the respecting order relies on.
 */
struct Hierarchy {
  int levels = 0;
  std::vector<int> level;                  // per edge
  std::vector<std::vector<int>> comp;      // [i][v] for i in [0, levels]
  std::vector<std::vector<std::vector<Vertex>>> members;  // [i][c]

  int NumComponents(int i) const { return static_cast<int>(members[i].size()); }
};

Hierarchy BuildHierarchy(const Graph& g, std::vector<int> level, int levels);

// Vertex order where every component occupies a contiguous rank interval,
// and whenever u reaches v through edges of level <= i without sharing a
// level-i component, u ranks before v.
struct RespectingOrder {
  std::vector<int> rank;        // vertex -> position in [0, n)
  std::vector<Vertex> by_rank;  // position -> vertex
};

// Ranks vertices lexicographically by component id from the top level down,
// breaking full ties by vertex id. Throws std::invalid_argument when the
// component partitions are not laminar.
RespectingOrder ComputeRespectingOrder(const Graph& g, const Hierarchy& h);

}  // namespace hierflow
