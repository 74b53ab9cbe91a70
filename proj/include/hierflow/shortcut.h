#pragma once

#include "hierflow/graph.h"
#include "hierflow/hierarchy.h"

namespace hierflow {

// Star gadget for one (level, component) pair: a fresh root joined to the
// tail of every level-i edge inside the component, in both directions.
struct Star {
  int level = 0;
  int comp = 0;
  Vertex root = -1;
  std::vector<Vertex> leaves;              // sorted base vertex ids
  std::vector<Edge> from_leaf, to_leaf;    // edge ids parallel to leaves
  std::vector<std::vector<Edge>> leaf_edges;  // contributing base edges
};

/**
 * Base graph plus one star per (level, component) with edges at that level.
 * Capacities in g are stored at integer scale q: a base edge holds q times
 * its original capacity and a star edge holds the plain capacity sum of its
 * contributing base edges, which equals q times the intended 1/q share.
 * Base vertices and edges keep their ids as a prefix of g.
 */
struct ShortcutGraph {
  Graph base;
  Hierarchy h;
  Graph g;
  CapacityT q = 1;
  bool skip_top = false;
  int n_base = 0, m_base = 0;
  std::vector<Star> stars;
  std::vector<int> star_of_edge;          // per g edge, -1 for base edges
  std::vector<std::vector<int>> star_at;  // [level][comp] -> star index or -1

  bool IsBaseEdge(Edge e) const { return e < m_base; }
  bool IsRoot(Vertex v) const { return v >= n_base; }
  int StarOfRoot(Vertex v) const { return v - n_base; }
};

// When skip_top is set, no stars are built for the top level.
ShortcutGraph BuildShortcut(const Graph& base, const Hierarchy& h, CapacityT q,
                            bool skip_top);

struct ShortcutWeights {
  std::vector<CapacityT> w;
  // Sums of 1/w(e) over base and star edges, for run-time diagnostics.
  double inv_base = 0, inv_star = 0;
};

// Base edges weigh the rank distance of their endpoints (self-loops weigh
// 1 and are never routed); star edges weigh the component size.
ShortcutWeights ComputeWeights(const ShortcutGraph& sg,
                               const RespectingOrder& order);

/**
 * Shortcut graphs induced on the two sides of a base vertex split, with the
 * edge levels inherited and components recomputed per side. to_parent maps
 * every piece edge to a parent edge of no smaller capacity, so any feasible
 * flow on a piece maps edge-wise onto the parent and routes the same demand
 * on base vertices.
 */
struct ShortcutSplit {
  Subgraph sub[2];           // [0] = side set, [1] = complement
  ShortcutGraph piece[2];
  std::vector<Edge> to_parent[2];
};

// Throws std::invalid_argument when side is empty or everything.
ShortcutSplit SplitShortcut(const ShortcutGraph& sg,
                            const std::vector<bool>& side);

void AddPieceFlow(const std::vector<Edge>& to_parent,
                  const std::vector<CapacityT>& piece_flow,
                  std::vector<CapacityT>& parent_flow);

}  // namespace hierflow
